#include <cmath>
#include <numbers>

#include "quadrature.hpp"
#include "whittaker/arch_whittaker.hpp"
#include "whittaker/errors.hpp"

namespace whittaker {

namespace {

constexpr double kPi = std::numbers::pi;

void require_params(const MiyazakiParams& p, double a1, double a2) {
  if (p.kappa < 2) throw InvalidArgument("discrete series weight kappa must be at least 2");
  if (!(a1 > 0.0) || !(a2 > 0.0)) throw DomainError("a1 and a2 must be positive");
}

std::vector<Monomial> monomials(int kappa) {
  std::vector<Monomial> out;
  for (int n1 = 0; n1 <= kappa; ++n1) {
    for (int n2 = 0; n1 + n2 <= kappa; ++n2) out.push_back({n1, n2, kappa - n1 - n2});
  }
  return out;
}

double multinomial(const Monomial& m) {
  return std::tgamma(m[0] + m[1] + m[2] + 1.0) /
         (std::tgamma(m[0] + 1.0) * std::tgamma(m[1] + 1.0) * std::tgamma(m[2] + 1.0));
}

// (sqrt(-1))^k
LogComplex i_power(int k) { return LogComplex(0.0, 0.5 * kPi * k); }

}  // namespace

Estimate miyazaki_integral(const MiyazakiParams& params, const Monomial& m, double a1, double a2,
                           double tol) {
  require_params(params, a1, a2);
  const auto [n1, n2, n3] = m;
  const cplx w = params.w;
  const cplx e1 = -double(n1) + 0.5 * (params.kappa - 1) + w;
  const cplx e2 = double(-n1 + n3) + 2.0 * w;
  const double lead = std::pow(a1 * a2, double(n1));
  const double sqrt_pi = std::sqrt(kPi);
  auto f = [&](double u1, double u2) {
    const double t1 = std::exp(u1), t2 = std::exp(u2);
    const double x = sqrt_pi * (a2 / t2 + t1 * t2 / a2);
    const double q = a1 * a2 / (t1 * t2);
    const double gauss = -kPi * (q * q + t2 * t2) - x * x;
    return lead * hermite(n2, x) * std::exp(e1 * u1 + e2 * u2 + gauss);
  };
  detail::LatticeOptions lo;
  lo.tol = tol;
  const double la1 = std::log(a1), la2 = std::log(a2);
  return detail::plane_integral(f, {0.5 * (la1 + la2), 0.5 * la2}, lo);
}

cplx miyazaki_integral_mellin(const MiyazakiParams& params, const Monomial& m, cplx s1, cplx s2) {
  const auto [n1, n2, n3] = m;
  const cplx w = params.w;
  const double k = 0.5 * (params.kappa - 1);
  const LogComplex v = LogComplex(-4.0 * std::numbers::ln2 + 0.5 * n2 * std::log(4.0 * kPi), 0.0) *
                       gamma_C(s1 + k + w) * gamma_R(s1 + double(n1)) * gamma_C(s2 + k + w) *
                       gamma_R(s2 + double(n3) + 2.0 * w) /
                       gamma_R(s1 + s2 + double(n1 + n3) + 2.0 * w);
  return v.value();
}

MonomialValues miyazaki_direct(const MiyazakiParams& params, double a1, double a2,
                               const ArchOptions& opts) {
  require_params(params, a1, a2);
  MonomialValues out;
  for (const auto& m : monomials(params.kappa)) {
    const Estimate I = miyazaki_integral(params, m, a1, a2, std::min(1e-10, 1e-2 * opts.tol));
    const double scale = multinomial(m) * std::pow(4.0 * kPi, -0.5 * m[1]) * a1 * a2;
    const cplx pre = scale * i_power(m[0] - m[2]).value();
    out[m] = {pre * I.value, std::abs(pre) * I.error};
  }
  return out;
}

MBIntegrand miyazaki_integrand(const MiyazakiParams& params, const Monomial& m, double a1,
                               double a2) {
  require_params(params, a1, a2);
  const cplx w = params.w;
  const double k = 0.5 * (params.kappa - 1);
  const auto [n1, n2, n3] = m;
  if (n1 < 0 || n2 < 0 || n3 < 0 || n1 + n2 + n3 != params.kappa) {
    throw InvalidArgument("monomial exponents must be nonnegative and sum to kappa");
  }
  const LogComplex pre = LogComplex(-4.0 * std::numbers::ln2 + std::log(multinomial(m) * a1), 0.0) *
                         i_power(n1 - n3) * LogComplex::from_log((1.0 + 2.0 * w) * std::log(a2));
  std::vector<GammaFactor> g = {
      {GammaKind::C, k + w, {Rational(1), Rational(0)}, Position::Numerator},
      {GammaKind::R, double(n1), {Rational(1), Rational(0)}, Position::Numerator},
      {GammaKind::C, k - w, {Rational(0), Rational(1)}, Position::Numerator},
      {GammaKind::R, double(n3), {Rational(0), Rational(1)}, Position::Numerator},
      {GammaKind::R, double(n1 + n3), {Rational(1), Rational(1)}, Position::Denominator},
  };
  std::vector<PowerFactor> p = {{a1, 0.0, {Rational(-1), Rational(0)}},
                                {a2, 0.0, {Rational(0), Rational(-1)}}};
  return MBIntegrand(2, pre, std::move(g), std::move(p));
}

MonomialValues miyazaki_mb(const MiyazakiParams& params, double a1, double a2,
                           const ArchOptions& opts) {
  require_params(params, a1, a2);
  MonomialValues out;
  for (const auto& m : monomials(params.kappa)) {
    const MBIntegrand f = miyazaki_integrand(params, m, a1, a2);
    const ContourSpec c = optimize_contour(f);
    const MBResult r = eval_mb(f, {c.sigma, opts.mb_height, opts.mb_step}, opts.eval());
    out[m] = {r.value, r.error_estimate};
  }
  return out;
}

}  // namespace whittaker
