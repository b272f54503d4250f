#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "quadrature.hpp"
#include "tower.hpp"
#include "whittaker/arch_whittaker.hpp"
#include "whittaker/errors.hpp"

namespace whittaker {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();

Rational half(int sign = 1) { return Rational(sign, 2); }

}  // namespace

int WeightIndexC::total() const { return std::accumulate(ell.begin(), ell.end(), 0); }

std::vector<int> WeightIndexC::partial_sums() const {
  std::vector<int> out(ell.size());
  std::partial_sum(ell.begin(), ell.end(), out.begin());
  return out;
}

std::vector<WeightIndexC> WeightIndexC::all(int n, int kappa) {
  std::vector<WeightIndexC> out;
  if (n < 1 || kappa < 0) return out;
  std::vector<int> cur(n, 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      cur[i] = left;
      out.push_back({cur});
      return;
    }
    for (int v = left; v >= 0; --v) {
      cur[i] = v;
      rec(i + 1, left - v);
    }
  };
  rec(0, kappa);
  return out;
}

double TorusPointC::delta_half() const {
  const int n = int(a.size()) + 1;
  double d = 1.0;
  for (int j = 1; j < n; ++j) d *= std::pow(a[j - 1], double(j * (n - j)));
  return d;
}

cplx SphericalParamsC::abs_nu() const { return std::accumulate(nu.begin(), nu.end(), cplx(0.0)); }

std::vector<cplx> SphericalParamsC::tilde() const {
  std::vector<cplx> out;
  for (std::size_t i = 1; i < nu.size(); ++i) out.push_back(nu[i] - nu[0]);
  return out;
}

namespace detail {

void require_torus(int n, const TorusPointC& a) {
  if (int(a.a.size()) != n - 1) {
    throw LengthMismatch("torus point needs " + std::to_string(n - 1) + " coordinates, got " +
                         std::to_string(a.a.size()));
  }
  for (double x : a.a) {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("torus coordinates must be positive");
  }
}

void require_weight(int n, int kappa, const WeightIndexC& ell) {
  if (kappa < 0) throw InvalidArgument("kappa must be nonnegative");
  if (int(ell.ell.size()) != n) {
    throw LengthMismatch("weight index needs " + std::to_string(n) + " entries, got " +
                         std::to_string(ell.ell.size()));
  }
  for (int v : ell.ell) {
    if (v < 0) throw InvalidArgument("weight index entries must be nonnegative");
  }
  if (ell.total() != kappa) {
    throw InvalidArgument("weight index must sum to kappa = " + std::to_string(kappa));
  }
}

std::vector<GammaFactor> seed_gammas(const std::vector<cplx>& mu, int nvars) {
  std::vector<GammaFactor> out;
  auto coeffs = [&](std::initializer_list<std::pair<int, Rational>> entries) {
    std::vector<Rational> c(nvars);
    for (const auto& [v, r] : entries) c[v] = r;
    return c;
  };
  switch (mu.size()) {
    case 1:
      break;
    case 2:
      for (cplx m : mu) out.push_back({GammaKind::C, m, coeffs({{0, half()}}), Position::Numerator});
      break;
    case 3: {
      // Barnes' first lemma applied to the rank-3 recursion.
      for (cplx m : mu) out.push_back({GammaKind::C, m, coeffs({{0, half()}}), Position::Numerator});
      for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
          out.push_back({GammaKind::C, mu[i] + mu[j], coeffs({{1, half()}}), Position::Numerator});
        }
      }
      out.push_back({GammaKind::C, mu[0] + mu[1] + mu[2], coeffs({{0, half()}, {1, half()}}),
                     Position::Denominator});
      break;
    }
    default:
      throw UnsupportedRank("closed-form Mellin transforms exist for ranks 1 to 3 only");
  }
  return out;
}

MBIntegrand tower_integrand(const std::vector<cplx>& nu, int kappa,
                            const std::vector<int>& ell_tilde, const TorusPointC& a,
                            LogComplex scale, bool shifted) {
  const int n = int(nu.size());
  const int nz = n - 2, ns = n - 1, nv = nz + ns;
  const cplx nu1 = nu[0];
  std::vector<cplx> mu;
  cplx abs_tilde = 0.0;
  for (int i = 1; i < n; ++i) {
    mu.push_back(nu[i] - nu1);
    abs_tilde += nu[i] - nu1;
  }
  auto gammas = seed_gammas(mu, nv);
  std::vector<PowerFactor> powers;
  auto zvar = [](int i) { return i - 1; };         // z_i, 1-based
  auto svar = [&](int i) { return nz + i - 1; };   // s_i, 1-based
  for (int i = 1; i <= ns; ++i) {
    const cplx shift = shifted ? double(i) * nu1 : cplx(0.0);
    const int lt = ell_tilde[i - 1];
    std::vector<Rational> first(nv), second(nv);
    first[svar(i)] = half();
    second[svar(i)] = half();
    if (i >= 2) first[zvar(i - 1)] = half(-1);
    cplx second_constant = 0.5 * lt + shift;
    if (i <= nz) {
      second[zvar(i)] = half(-1);
    } else {
      second_constant += abs_tilde;
    }
    gammas.push_back({GammaKind::C, 0.5 * (kappa - lt) + shift, first, Position::Numerator});
    gammas.push_back({GammaKind::C, second_constant, second, Position::Numerator});

    std::vector<Rational> minus_s(nv);
    minus_s[svar(i)] = Rational(-1);
    powers.push_back({a.a[i - 1], 0.0, minus_s});
    if (!shifted) powers.push_back({a.a[i - 1], 2.0 * double(i) * nu1, std::vector<Rational>(nv)});
  }
  return MBIntegrand(nv, scale, std::move(gammas), std::move(powers));
}

namespace {

// Uniform lattice u_k = k h restricted to the indices where the axis
// function is not negligible.
struct Axis {
  int first = 0;
  std::vector<cplx> values;
  int last() const { return first + int(values.size()) - 1; }
};

Axis make_axis(double center, double h, const std::function<cplx(double)>& g) {
  constexpr double kHalfWidth = 15.0;
  constexpr double kTrim = 1e-25;
  const int lo = int(std::floor((center - kHalfWidth) / h));
  const int hi = int(std::ceil((center + kHalfWidth) / h));
  std::vector<cplx> v(hi - lo + 1);
  double peak = 0.0;
  for (int k = lo; k <= hi; ++k) {
    v[k - lo] = g(k * h);
    peak = std::max(peak, std::abs(v[k - lo]));
  }
  int b = 0, e = int(v.size()) - 1;
  while (b < e && std::abs(v[b]) < kTrim * peak) ++b;
  while (e > b && std::abs(v[e]) < kTrim * peak) --e;
  return {lo + b, std::vector<cplx>(v.begin() + b, v.begin() + e + 1)};
}

// f_{nu~}(r) of rank 2 in the propagation normalisation (16 times the
// Ishii-Stade base case).
cplx rank2_seed(cplx abs_tilde, cplx order, double log_r) {
  return 16.0 * std::exp(abs_tilde * log_r) * bessel_k(order, 4.0 * kPi * std::exp(log_r));
}

// Lazily filled table of the seed on lattice differences.
class SeedTable {
 public:
  SeedTable(cplx abs_tilde, cplx order, double h) : abs_(abs_tilde), order_(order), h_(h) {}
  void reserve(int dmin, int dmax) {
    dmin_ = dmin;
    values_.assign(dmax - dmin + 1, cplx(std::numeric_limits<double>::quiet_NaN()));
  }
  cplx operator()(int d) {
    cplx& v = values_[d - dmin_];
    if (std::isnan(v.real())) v = rank2_seed(abs_, order_, d * h_);
    return v;
  }

 private:
  cplx abs_, order_;
  double h_;
  int dmin_ = 0;
  std::vector<cplx> values_;
};

struct Level {
  cplx value;
  double l1;
};

Level propagation_sum3(const MinimalTypeParamsC& p, const std::vector<int>& lt,
                       const std::array<double, 3>& alpha, double h) {
  const cplx abs_t = p.nu[1] + p.nu[2] - 2.0 * p.nu[0];
  const cplx order = p.nu[1] - p.nu[2];
  const int kappa = p.kappa;
  const double la1 = std::log(alpha[0]), la2 = std::log(alpha[1]), la3 = std::log(alpha[2]);
  const cplx p1 = double(2 * lt[0] - kappa);
  const cplx p2 = 2.0 * abs_t + double(2 * lt[1] - kappa);
  auto axis_fn = [](cplx pw, double l_in, double l_next) {
    return [=](double u) {
      const double e = -2.0 * kPi * (std::exp(2.0 * (u - l_next)) + std::exp(2.0 * (l_in - u)));
      return std::exp(pw * u + e);
    };
  };
  const Axis A1 = make_axis(0.5 * (la1 + la2), h, axis_fn(p1, la1, la2));
  const Axis A2 = make_axis(0.5 * (la2 + la3), h, axis_fn(p2, la2, la3));
  SeedTable seed(abs_t, order, h);
  seed.reserve(A1.first - A2.last(), A1.last() - A2.first);
  cplx sum = 0.0;
  double l1 = 0.0;
  for (std::size_t i = 0; i < A1.values.size(); ++i) {
    cplx inner = 0.0;
    double inner_l1 = 0.0;
    for (std::size_t j = 0; j < A2.values.size(); ++j) {
      const int d = (A1.first + int(i)) - (A2.first + int(j));
      const cplx t = seed(d) * A2.values[j];
      inner += t;
      inner_l1 += std::abs(t);
    }
    sum += A1.values[i] * inner;
    l1 += std::abs(A1.values[i]) * inner_l1;
  }
  return {sum * h * h, l1 * h * h};
}

}  // namespace

Estimate propagation_value(const MinimalTypeParamsC& p, const WeightIndexC& ell,
                           const TorusPointC& a, double tol) {
  const int n = p.n();
  if (n != 2 && n != 3) throw UnsupportedRank("the propagation path covers n = 2, 3");
  require_torus(n, a);
  require_weight(n, p.kappa, ell);
  const auto lt = ell.partial_sums();
  const int kappa = p.kappa;
  const cplx nu1 = p.nu[0];

  if (n == 2) {
    const double a1 = a.a[0];
    const cplx pw = 2.0 * (p.nu[1] - nu1) + double(2 * lt[0] - kappa);
    const double la = std::log(a1);
    auto g = [&](double u) {
      return std::exp(pw * u - 2.0 * kPi * (std::exp(2.0 * u) + std::exp(2.0 * (la - u))));
    };
    LatticeOptions lo;
    lo.tol = std::min(1e-13, 1e-3 * tol);
    const Estimate J = line_integral(g, 0.5 * la, lo);
    const cplx pre = 16.0 * std::exp(2.0 * nu1 * la) * std::pow(a1, double(kappa - lt[0]));
    return {pre * J.value, std::abs(pre) * J.error};
  }

  const double a1 = a.a[0], a2 = a.a[1];
  const std::array<double, 3> alpha = {a1 * a2, a2, 1.0};
  const cplx pre = 256.0 * std::exp(2.0 * nu1 * std::log(a1) + 4.0 * nu1 * std::log(a2)) *
                   std::pow(alpha[0], double(kappa - lt[0])) * std::pow(alpha[1], double(-lt[0])) *
                   std::pow(alpha[1], double(kappa - lt[1]));
  double h = 0.2;
  Level coarse = propagation_sum3(p, lt, alpha, h);
  double change = 0.0;
  for (int level = 0; level < 4; ++level) {
    h *= 0.5;
    const Level fine = propagation_sum3(p, lt, alpha, h);
    change = std::abs(fine.value - coarse.value);
    if (change <= 1e-3 * tol * std::abs(fine.value) || change <= 64.0 * kEps * fine.l1) {
      return {pre * fine.value, std::abs(pre) * (change + 16.0 * kEps * fine.l1)};
    }
    coarse = fine;
  }
  std::ostringstream os;
  os << "propagation integral did not settle (relative change " << change / std::abs(coarse.value)
     << ")";
  throw Unconverged(os.str());
}

namespace {

// Lattice sums for the Mellin transform of the propagation integral. The
// window is [L, upper] on every axis; `inner` drops the slab below L + 10
// to estimate the truncation error.
struct MellinLevel {
  cplx full = 0.0;
  cplx inner = 0.0;
  double l1 = 0.0;
};

constexpr double kUpper = 3.0;   // exp(-2 pi e^{2u}) < 1e-160 beyond here
constexpr double kSlab = 10.0;

MellinLevel mellin_sum2(cplx q, cplx pw, double h, double L) {
  const int lo = int(std::floor(L / h)), hi = int(std::ceil(kUpper / h));
  const int guard = lo + int(std::lround(kSlab / h));
  std::vector<double> kill(2 * (hi - lo) + 1);  // exp(-2 pi e^{2 d h}), d = index - (hi - lo)
  const int off = hi - lo;
  for (int d = -off; d <= off; ++d) kill[d + off] = std::exp(-2.0 * kPi * std::exp(2.0 * d * h));
  MellinLevel out;
  for (int y = lo; y <= hi; ++y) {
    const cplx Y = std::exp(pw * (y * h)) * kill[y + off];
    if (Y == 0.0) continue;
    for (int v = lo; v <= hi; ++v) {
      const double k = kill[v - y + off];
      if (k == 0.0) break;
      const cplx t = Y * std::exp(q * (v * h)) * k;
      out.full += t;
      out.l1 += std::abs(t);
      if (y >= guard && v >= guard) out.inner += t;
    }
  }
  const double w = h * h;
  out.full *= w;
  out.inner *= w;
  out.l1 *= w;
  return out;
}

MellinLevel mellin_sum3(const MinimalTypeParamsC& p, cplx q1, cplx q2, cplx p1, cplx p2,
                        double h, double L) {
  const cplx abs_t = p.nu[1] + p.nu[2] - 2.0 * p.nu[0];
  const cplx order = p.nu[1] - p.nu[2];
  const int lo = int(std::floor(L / h)), hi = int(std::ceil(kUpper / h));
  const int guard = lo + int(std::lround(kSlab / h));
  const int off = 2 * (hi - lo);
  std::vector<double> kill(2 * off + 1);
  for (int d = -off; d <= off; ++d) kill[d + off] = std::exp(-2.0 * kPi * std::exp(2.0 * d * h));
  SeedTable seed(abs_t, order, h);
  seed.reserve(lo - hi, hi - lo);
  std::vector<cplx> X(hi - lo + 1), V(hi - lo + 1), Y(hi - lo + 1);
  for (int k = lo; k <= hi; ++k) {
    X[k - lo] = std::exp((p1 + q1) * (k * h));
    V[k - lo] = std::exp((q2 - q1) * (k * h));
    Y[k - lo] = std::exp(p2 * (k * h)) * kill[k + off];
  }
  MellinLevel out;
  for (int y = lo; y <= hi; ++y) {
    if (Y[y - lo] == 0.0) continue;
    for (int v = lo; v <= hi; ++v) {
      const double kv = kill[v - y + off];
      if (kv == 0.0) break;
      const cplx outer = Y[y - lo] * V[v - lo] * kv;
      cplx s = 0.0, s_inner = 0.0;
      double l1 = 0.0;
      for (int x = lo; x <= hi; ++x) {
        const double kx = kill[x - v + off];
        if (kx == 0.0) break;
        const cplx t = X[x - lo] * seed(x - y) * kx;
        s += t;
        l1 += std::abs(t);
        if (x >= guard) s_inner += t;
      }
      out.full += outer * s;
      out.l1 += std::abs(outer) * l1;
      if (y >= guard && v >= guard) out.inner += outer * s_inner;
    }
  }
  const double w = h * h * h;
  out.full *= w;
  out.inner *= w;
  out.l1 *= w;
  return out;
}

}  // namespace

Estimate propagation_mellin(const MinimalTypeParamsC& p, const WeightIndexC& ell,
                            std::span<const cplx> w, double tol) {
  const int n = p.n();
  if (n != 2 && n != 3) throw UnsupportedRank("the propagation Mellin transform covers n = 2, 3");
  require_weight(n, p.kappa, ell);
  if (int(w.size()) != n - 1) throw LengthMismatch("Mellin variable count must be n - 1");
  const auto lt = ell.partial_sums();
  const int kappa = p.kappa;
  const cplx nu1 = p.nu[0];

  std::function<MellinLevel(double, double)> level;
  cplx pre = 16.0;
  if (n == 2) {
    const cplx q = w[0] + 2.0 * nu1 + double(kappa - lt[0]);
    const cplx pw = 2.0 * (p.nu[1] - nu1) + double(2 * lt[0] - kappa);
    if (q.real() <= 0.0 || (q + pw).real() <= 0.0) {
      throw DomainError("Mellin variable lies outside the convergence region");
    }
    level = [=](double h, double L) { return mellin_sum2(q, pw, h, L); };
  } else {
    const cplx abs_t = p.nu[1] + p.nu[2] - 2.0 * nu1;
    const cplx q1 = w[0] + 2.0 * nu1 + double(kappa - lt[0]);
    const cplx q2 = w[1] + 4.0 * nu1 + double(2 * kappa - 2 * lt[0] - lt[1]);
    const cplx p1 = double(2 * lt[0] - kappa);
    const cplx p2 = 2.0 * abs_t + double(2 * lt[1] - kappa);
    if (q1.real() <= 0.0) throw DomainError("Mellin variable lies outside the convergence region");
    // int b^{q1} e^{-2 pi b^2} d^x b, the b_1 integral after rescaling.
    LatticeOptions lo;
    lo.reach = 400.0;
    const Estimate G = line_integral(
        [&](double u) { return std::exp(q1 * u - 2.0 * kPi * std::exp(2.0 * u)); }, 0.0, lo);
    pre = 256.0 * G.value;
    level = [=, &p](double h, double L) { return mellin_sum3(p, q1, q2, p1, p2, h, L); };
  }

  constexpr double kMinL = -160.0;
  double L = -40.0;
  for (;;) {
    double h = 0.2;
    MellinLevel coarse = level(h, L);
    MellinLevel fine = coarse;
    double disc = 0.0;
    for (int k = 0; k < 3; ++k) {
      h *= 0.5;
      fine = level(h, L);
      disc = std::abs(fine.full - coarse.full);
      if (disc <= 1e-2 * tol * std::abs(fine.full)) break;
      coarse = fine;
    }
    const double tail = std::abs(fine.full - fine.inner);
    const double err = disc + tail + 16.0 * kEps * fine.l1;
    if (err <= tol * std::abs(fine.full)) return {pre * fine.full, std::abs(pre) * err};
    if (tail > disc && L > kMinL) {
      L -= 40.0;
      continue;
    }
    std::ostringstream os;
    os << "Mellin quadrature did not reach tolerance " << tol << " (relative estimate "
       << err / std::abs(fine.full) << ")";
    throw Unconverged(os.str());
  }
}

}  // namespace detail

// ---------------------------------------------------------------------------

namespace {

void require_minimal(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                     const TorusPointC& a) {
  const int n = params.n();
  if (n != 2 && n != 3) throw UnsupportedRank("minimal K-type formulas are implemented for n = 2, 3");
  detail::require_torus(n, a);
  detail::require_weight(n, params.kappa, ell);
}

}  // namespace

MBIntegrand minimal_type_integrand(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                                   const TorusPointC& a) {
  require_minimal(params, ell, a);
  auto lt = ell.partial_sums();
  lt.pop_back();
  return detail::tower_integrand(params.nu, params.kappa, lt, a, LogComplex(), true);
}

MBIntegrand minimal_type_integrand_unshifted(const MinimalTypeParamsC& params,
                                             const WeightIndexC& ell, const TorusPointC& a) {
  require_minimal(params, ell, a);
  auto lt = ell.partial_sums();
  lt.pop_back();
  return detail::tower_integrand(params.nu, params.kappa, lt, a, LogComplex(), false);
}

Estimate whittaker_c_mb(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                        const TorusPointC& a, const ArchOptions& opts) {
  const MBIntegrand f = minimal_type_integrand(params, ell, a);
  const ContourSpec c = optimize_contour(f);
  const MBResult r = eval_mb(f, {c.sigma, opts.mb_height, opts.mb_step}, opts.eval());
  return {r.value, r.error_estimate};
}

Estimate whittaker_c_direct(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                            const TorusPointC& a, const ArchOptions& opts) {
  require_minimal(params, ell, a);
  return detail::propagation_value(params, ell, a, opts.tol);
}

}  // namespace whittaker
