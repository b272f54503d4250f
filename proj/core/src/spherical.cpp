#include <cmath>
#include <numbers>
#include <sstream>

#include "tower.hpp"
#include "whittaker/arch_whittaker.hpp"
#include "whittaker/errors.hpp"

namespace whittaker {

namespace {

constexpr double kPi = std::numbers::pi;

// Constant in front of the Mellin seed for f_nu of rank n - 1, in the
// Ishii-Stade normalisation f_nu(a) = a^{nu1+nu2} K_{nu1-nu2}(4 pi a) at n = 2.
LogComplex spherical_scale(int n) {
  const double log2 = std::numbers::ln2;
  return n == 4 ? LogComplex(-2.0 * log2, 0.0) : LogComplex(-4.0 * log2, 0.0);
}

void require_rank(int n, int lo, int hi, const char* what) {
  if (n < lo || n > hi) {
    std::ostringstream os;
    os << what << " supports n = " << lo << ".." << hi << ", got n = " << n;
    throw UnsupportedRank(os.str());
  }
}

// The region where the Mellin integral of f_mu converges absolutely.
bool in_mellin_tube(const std::vector<cplx>& mu, const std::vector<cplx>& z) {
  if (mu.size() == 2) {
    return (0.5 * z[0] + mu[0]).real() > 0.0 && (0.5 * z[0] + mu[1]).real() > 0.0;
  }
  for (cplx m : mu) {
    if ((0.5 * z[0] + m).real() <= 0.0) return false;
  }
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i + 1; j < 3; ++j) {
      if ((0.5 * z[1] + mu[i] + mu[j]).real() <= 0.0) return false;
    }
  }
  return true;
}

}  // namespace

MBIntegrand spherical_integrand(const SphericalParamsC& params, const TorusPointC& a) {
  const int n = params.n();
  require_rank(n, 2, 4, "the spherical recursion integrand");
  detail::require_torus(n, a);
  return detail::tower_integrand(params.nu, 0, std::vector<int>(n - 1, 0), a, spherical_scale(n),
                                 true);
}

Estimate f_spherical(const SphericalParamsC& params, const TorusPointC& a, const ArchOptions& opts) {
  const int n = params.n();
  require_rank(n, 2, 4, "f_spherical");
  detail::require_torus(n, a);
  if (n == 2) {
    const double x = a.a[0];
    const cplx v = std::exp((params.nu[0] + params.nu[1]) * std::log(x)) *
                   bessel_k(params.nu[0] - params.nu[1], 4.0 * kPi * x);
    return {v, 1e-12 * std::abs(v)};
  }
  const MBIntegrand f = spherical_integrand(params, a);
  const ContourSpec c = optimize_contour(f);
  const MBResult r = eval_mb(f, {c.sigma, opts.mb_height, opts.mb_step}, opts.eval());
  return {r.value, r.error_estimate};
}

cplx mellin_f_spherical(const SphericalParamsC& mu, const std::vector<cplx>& z,
                        const ArchOptions& opts) {
  const int r = mu.n();
  require_rank(r, 1, 3, "mellin_f_spherical");
  if (int(z.size()) != r - 1) {
    throw LengthMismatch("rank " + std::to_string(r) + " Mellin transform takes " +
                         std::to_string(r - 1) + " variables");
  }
  if (r == 1) return 1.0;
  if (!in_mellin_tube(mu.nu, z)) throw DomainError("Mellin variable outside the convergence tube");
  if (r == 2) {
    return (spherical_scale(3) * gamma_C(0.5 * z[0] + mu.nu[0]) * gamma_C(0.5 * z[0] + mu.nu[1]))
        .value();
  }
  // Rank 3: quadrature of f_mu over R_+^2 on a log lattice. The propagation
  // path at kappa = 0 is 16 f_mu.
  const MinimalTypeParamsC p{mu.nu, 0};
  return detail::propagation_mellin(p, {{0, 0, 0}}, z, opts.tol).value / 16.0;
}

ConsistencyResult ishii_stade_consistency(const std::array<cplx, 2>& mu, cplx w, cplx sigma,
                                          const ArchOptions& opts) {
  const std::vector<cplx> m(mu.begin(), mu.end());
  const cplx lhs = mellin_f_spherical({m}, {w}, opts);

  // z must separate the poles of the Mellin seed from those of the two
  // Gamma_C factors with -z/2.
  const double lower = std::max(-2.0 * mu[0].real(), -2.0 * mu[1].real());
  const double upper = std::min(w.real(), 2.0 * sigma.real());
  if (!(upper > lower)) {
    throw InfeasibleContour("no vertical line separates the pole families for these (mu, w, sigma)");
  }
  const cplx abs_mu = mu[0] + mu[1];
  const LogComplex pre = spherical_scale(3) * LogComplex(-2.0 * std::numbers::ln2, 0.0) *
                         gamma_C(0.5 * w + abs_mu + sigma) / gamma_C(mu[0] + sigma) /
                         gamma_C(mu[1] + sigma);
  std::vector<GammaFactor> g;
  g.push_back({GammaKind::C, mu[0], {Rational(1, 2)}, Position::Numerator});
  g.push_back({GammaKind::C, mu[1], {Rational(1, 2)}, Position::Numerator});
  g.push_back({GammaKind::C, 0.5 * w, {Rational(-1, 2)}, Position::Numerator});
  g.push_back({GammaKind::C, sigma, {Rational(-1, 2)}, Position::Numerator});
  const MBIntegrand f(1, pre, std::move(g));
  const MBResult r =
      eval_mb(f, {{0.5 * (lower + upper)}, opts.mb_height, opts.mb_step}, opts.eval());
  return {lhs, {r.value, r.error_estimate}};
}

}  // namespace whittaker
