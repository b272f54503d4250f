#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "quadrature.hpp"
#include "whittaker/arch_whittaker.hpp"
#include "whittaker/errors.hpp"

namespace whittaker {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEps = std::numeric_limits<double>::epsilon();
const cplx kI(0.0, 1.0);

cplx ipow(cplx base, int k) {
  cplx r = 1.0;
  for (int j = 0; j < std::abs(k); ++j) r *= base;
  return k >= 0 ? r : 1.0 / r;
}

detail::LatticeOptions tight() {
  detail::LatticeOptions o;
  o.tol = 1e-13;
  return o;
}

}  // namespace

// --- Hermite/Gaussian Fourier integral over the unipotent radical of GL_3 ---

cplx ft1_closed_form(int n, int m, double a2, double t1, double t2) {
  const double x = std::sqrt(kPi) * (a2 / t2 + t1 * t2 / a2);
  return std::pow(4.0 * kPi, -0.5 * n) * ipow(kI, -m) * t1 * t1 * std::pow(t2, m + 3) / a2 *
         hermite(n, x) * std::exp(-kPi * (t1 * t1 * t2 * t2 / (a2 * a2) + t2 * t2));
}

cplx ft1_quadrature(int n, int m, double a2, double t1, double t2) {
  // Tensor trapezoid over (u12, u13, u23). Every axis is Gaussian, with widths
  // t1 t2 / a2, t1 t2 and t2. The integrand is entire, so the oscillating axes
  // u12 and u23 are moved to Im u = -width^2, where e^{-2 pi i u} cancels
  // against the Gaussian. On the real line the sum would lose every digit
  // below eps times the O(1) integrand to cancellation.
  const std::array<double, 3> width = {t1 * t2 / a2, t1 * t2, t2};
  const std::array<double, 3> shift = {-width[0] * width[0], 0.0, -width[2] * width[2]};
  constexpr double kReach = 7.0;
  auto level = [&](double rel, double& l1) {
    std::array<std::vector<cplx>, 3> nodes;
    for (int ax = 0; ax < 3; ++ax) {
      const double h = rel * width[ax];
      const int K = int(std::ceil(kReach / rel));
      for (int k = -K; k <= K; ++k) nodes[ax].push_back(cplx(k * h, shift[ax]));
    }
    std::vector<cplx> A, B;
    for (cplx u12 : nodes[0]) {
      const cplx lin = a2 / t2 + kI * a2 * u12 / (t1 * t2);
      A.push_back(ipow(lin, n) * std::exp(-kPi * a2 * a2 * u12 * u12 / (t1 * t1 * t2 * t2) -
                                          2.0 * kPi * kI * u12));
    }
    for (cplx u23 : nodes[2]) B.push_back(std::exp(-kPi * u23 * u23 / (t2 * t2) - 2.0 * kPi * kI * u23));
    cplx sum = 0.0;
    l1 = 0.0;
    for (std::size_t i = 0; i < nodes[0].size(); ++i) {
      for (cplx u13 : nodes[1]) {
        const double g13 = std::exp(-kPi * std::norm(u13) / (t1 * t1 * t2 * t2));
        for (std::size_t k = 0; k < nodes[2].size(); ++k) {
          const cplx lin = nodes[2][k] / t2 + kI * u13 / (t1 * t2);
          const cplx v = A[i] * ipow(lin, m) * g13 * B[k];
          sum += v;
          l1 += std::abs(v);
        }
      }
    }
    const double vol = rel * rel * rel * width[0] * width[1] * width[2];
    l1 *= vol;
    return sum * vol;
  };
  double rel = 0.4, l1 = 0.0;
  cplx value = level(rel, l1);
  for (int k = 0; k < 5; ++k) {
    rel *= 0.5;
    const cplx refined = level(rel, l1);
    const double change = std::abs(refined - value);
    value = refined;
    if (k >= 1 && (change <= 1e-12 * std::abs(value) || change <= 256.0 * kEps * l1)) break;
  }
  return value;
}

// --- Mellin transforms with Hermite factors ---------------------------------

cplx mellin1_part1_lhs(int n, double a, double b, cplx s) {
  if (a == 0.0) throw DomainError("a must be nonzero");
  if (s.real() <= 0.0) throw DomainError("Re s must be positive");
  auto f = [&](double u) {
    const double x = a * std::exp(u) + b;
    return hermite(n, x) * std::exp(s * u - x * x);
  };
  return detail::line_integral(f, std::log((std::abs(b) + 1.0) / std::abs(a)), tight()).value;
}

cplx mellin1_part1_rhs(int n, double a, double b, cplx s) {
  if (a == 0.0) throw DomainError("a must be nonzero");
  if (s.real() <= n) throw DomainError("Re s must exceed n");
  auto f = [&](double u) {
    const double x = a * std::exp(u) + b;
    return std::exp((s - double(n)) * u - x * x);
  };
  const cplx integral =
      detail::line_integral(f, std::log((std::abs(b) + 1.0) / std::abs(a)), tight()).value;
  const LogComplex ratio = log_gamma(s) / log_gamma(s - double(n));
  return std::pow(a, -n) * ratio.value() * integral;
}

cplx mellin1_part2_closed_form(cplx s1, cplx s2) {
  const LogComplex v = LogComplex::from_log(-(s1 + s2) * std::numbers::ln2 +
                                            0.5 * (1.0 - s1 - s2) * std::log(kPi)) *
                       log_gamma(s1) * log_gamma(s2) / log_gamma(0.5 * (s1 + s2 + 1.0));
  return v.value();
}

cplx mellin1_part2_quadrature(cplx s1, cplx s2) {
  if (s1.real() <= 0.0 || s2.real() <= 0.0) throw DomainError("Re s1, Re s2 must be positive");
  auto f = [&](double u1, double u2) {
    const double t = std::exp(u1) + std::exp(u2);
    return std::exp(s1 * u1 + s2 * u2 - kPi * t * t);
  };
  detail::LatticeOptions o = tight();
  o.reach = 200.0;
  return detail::plane_integral(f, {-1.0, -1.0}, o).value;
}

// --- Fourier transforms over C with dz = 2 dx dy ---------------------------

cplx ft2_closed_form(int N, double a) {
  return ipow(-kI, N) * std::pow(a, N) * std::exp(-2.0 * kPi * a * a);
}

cplx ft2_quadrature(int N, double a) {
  auto f = [&](double x, double y) {
    return 2.0 * ipow(cplx(x, -y), N) *
           std::exp(cplx(-2.0 * kPi * (x * x + y * y), -4.0 * kPi * a * x));
  };
  constexpr double R = 5.0;
  return detail::box_integral(f, {-R, -R}, {R, R}, tight()).value;
}

cplx ft3_closed_form(int kappa, const WeightIndexC& ell, double t1, double alpha1, double alpha2) {
  if (ell.ell.size() != 2 || ell.total() != kappa) {
    throw InvalidArgument("the n = 2 case needs ell = (l1, l2) with l1 + l2 = kappa");
  }
  const int l1 = ell.ell[0];
  const double pre = t1 * t1 / (alpha2 * alpha2);
  return pre * ipow(-kI, l1) * std::pow(t1, 2 * l1 - kappa) * std::pow(alpha1, kappa - l1) *
         std::pow(alpha2, -l1) * std::exp(-2.0 * kPi * t1 * t1 / (alpha2 * alpha2));
}

cplx ft3_quadrature(int kappa, const WeightIndexC& ell, double t1, double alpha1, double alpha2) {
  if (ell.ell.size() != 2 || ell.total() != kappa) {
    throw InvalidArgument("the n = 2 case needs ell = (l1, l2) with l1 + l2 = kappa");
  }
  const int l1 = ell.ell[0], l2 = ell.ell[1];
  const double c = alpha2 / t1;
  const cplx fixed = std::pow(alpha1 / t1, l2);
  // det A_1 = alpha2 u / t1, det A_2 = alpha1 / t1; psi^{-1}(u) = e^{-4 pi i Re u}.
  auto f = [&](double x, double y) {
    return 2.0 * fixed * ipow(c * cplx(x, -y), l1) *
           std::exp(cplx(-2.0 * kPi * c * c * (x * x + y * y), -4.0 * kPi * x));
  };
  const double R = 6.0 / c;
  detail::LatticeOptions o = tight();
  o.h0 = std::min(0.25, 0.5 / c);
  return detail::box_integral(f, {-R, -R}, {R, R}, o).value;
}

// --- Report -------------------------------------------------------------------

LemmaReport lemma_checks() {
  LemmaReport report;
  auto add = [&](const std::string& lemma, const std::string& label, cplx lhs, cplx rhs) {
    const double rel = std::abs(lhs - rhs) / std::abs(rhs);
    report.cases.push_back({lemma, label, lhs, rhs, rel});
    double& worst = report.max_rel_err[lemma];
    worst = std::max(worst, rel);
  };
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> pos(0.5, 1.5);

  // FT1: every (n, m) with n, m <= 3 at (1, 1, 1) and two random points.
  std::vector<std::array<double, 3>> points = {{1.0, 1.0, 1.0}};
  for (int k = 0; k < 2; ++k) points.push_back({pos(rng), pos(rng), pos(rng)});
  for (int n = 0; n <= 3; ++n) {
    for (int m = 0; m <= 3; ++m) {
      for (const auto& [a2, t1, t2] : points) {
        std::ostringstream os;
        os << "n=" << n << " m=" << m << " a2=" << a2 << " t1=" << t1 << " t2=" << t2;
        add("fourier_transform_1", os.str(), ft1_quadrature(n, m, a2, t1, t2),
            ft1_closed_form(n, m, a2, t1, t2));
      }
    }
  }

  // Mellin 1, part (1): both sides by quadrature.
  const std::vector<std::tuple<double, double, cplx>> m1 = {
      {1.3, 0.4, cplx(4.2, 0.5)}, {-0.8, 0.7, cplx(4.5, -1.0)}, {2.0, -1.1, cplx(5.0, 0.0)}};
  for (int n = 0; n <= 3; ++n) {
    for (const auto& [a, b, s] : m1) {
      std::ostringstream os;
      os << "n=" << n << " a=" << a << " b=" << b << " s=" << s;
      add("mellin_1_part_1", os.str(), mellin1_part1_lhs(n, a, b, s), mellin1_part1_rhs(n, a, b, s));
    }
  }

  // Mellin 1, part (2).
  const std::vector<std::pair<cplx, cplx>> m2 = {
      {1.5, 2.0}, {cplx(1.2, 0.7), cplx(2.3, -0.4)}, {3.0, 1.1}, {cplx(2.0, 3.0), cplx(1.7, -2.0)}};
  for (const auto& [s1, s2] : m2) {
    std::ostringstream os;
    os << "s1=" << s1 << " s2=" << s2;
    add("mellin_1_part_2", os.str(), mellin1_part2_quadrature(s1, s2),
        mellin1_part2_closed_form(s1, s2));
  }

  // FT2: N <= 4.
  for (int N = 0; N <= 4; ++N) {
    for (double a : {0.5, -0.3, 1.1}) {
      std::ostringstream os;
      os << "N=" << N << " a=" << a;
      add("fourier_transform_2", os.str(), ft2_quadrature(N, a), ft2_closed_form(N, a));
    }
  }

  // FT3 for n = 2: every ell with kappa <= 3.
  const std::vector<std::array<double, 3>> ft3_points = {{1.0, 1.0, 1.0}, {0.7, 1.3, 0.9},
                                                         {1.2, 0.6, 1.5}};
  for (int kappa = 0; kappa <= 3; ++kappa) {
    for (const auto& ell : WeightIndexC::all(2, kappa)) {
      for (const auto& [t1, al1, al2] : ft3_points) {
        std::ostringstream os;
        os << "kappa=" << kappa << " ell=(" << ell.ell[0] << "," << ell.ell[1] << ") t1=" << t1
           << " alpha=(" << al1 << "," << al2 << ")";
        add("fourier_transform_3", os.str(), ft3_quadrature(kappa, ell, t1, al1, al2),
            ft3_closed_form(kappa, ell, t1, al1, al2));
      }
    }
  }
  return report;
}

}  // namespace whittaker
