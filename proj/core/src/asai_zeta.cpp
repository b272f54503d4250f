#include "whittaker/asai_zeta.hpp"

#include <cmath>
#include <numbers>

#include "tower.hpp"
#include "whittaker/errors.hpp"

namespace whittaker {

LogComplex LFactor::evaluate(cplx s) const {
  LogComplex v = LogComplex::from_log((two.constant + two.slope * s) * std::numbers::ln2 +
                                      (pi.constant + pi.slope * s) * std::log(std::numbers::pi));
  for (const auto& g : gamma_terms) {
    v *= g.kind == AsaiGammaKind::R ? gamma_R(g.argument(s)) : gamma_C(g.argument(s));
  }
  return v;
}

namespace {

void require_input(const AsaiInput& in) {
  if (in.n < 1) throw InvalidArgument("n must be at least 1");
  if (int(in.nu.size()) != in.n) throw LengthMismatch("nu must have n entries");
  if (in.kappa < 0) throw InvalidArgument("kappa must be nonnegative");
}

}  // namespace

LFactor asai_l_factor(const AsaiInput& in) {
  require_input(in);
  const auto& nu = in.nu;
  LFactor L;
  L.gamma_terms.push_back({AsaiGammaKind::R, 2.0 * nu[0] + double(in.epsilon())});
  for (int j = 1; j < in.n; ++j) L.gamma_terms.push_back({AsaiGammaKind::R, 2.0 * nu[j]});
  for (int j = 1; j < in.n; ++j) {
    L.gamma_terms.push_back({AsaiGammaKind::C, nu[0] + nu[j] + 0.5 * in.kappa});
  }
  for (int i = 1; i < in.n; ++i) {
    for (int j = i + 1; j < in.n; ++j) L.gamma_terms.push_back({AsaiGammaKind::C, nu[i] + nu[j]});
  }
  return L;
}

cplx asai_rhs(const AsaiInput& in) {
  const LFactor L = asai_l_factor(in);
  const cplx shifted = in.s + 2.0 * in.nu[0];
  const LogComplex v = LogComplex(double(in.n * (in.n - 2)) * std::numbers::ln2, 0.0) *
                       gamma_R(shifted + double(in.kappa)) /
                       gamma_R(shifted + double(in.epsilon())) * L.evaluate(in.s);
  return v.value();
}

AsaiEstimate asai_lhs_mellin(const AsaiInput& in, double tol) {
  require_input(in);
  if (in.n != 2 && in.n != 3) throw UnsupportedRank("asai_lhs_mellin supports n = 2, 3");
  cplx abs_nu = 0.0;
  for (cplx v : in.nu) abs_nu += v;
  const cplx ns = double(in.n) * in.s;
  const LogComplex pre =
      LogComplex::from_log((-2.0 + 0.5 * (ns + double(in.kappa) + 2.0 * abs_nu)) * std::numbers::ln2) *
      gamma_C(0.5 * (ns + double(in.kappa)) + abs_nu);

  WeightIndexC ell{std::vector<int>(in.n, 0)};
  ell.ell.back() = in.kappa;
  std::vector<cplx> w;
  for (int i = 1; i < in.n; ++i) w.push_back(double(i) * in.s);
  const Estimate M =
      detail::propagation_mellin(MinimalTypeParamsC{in.nu, in.kappa}, ell, w, 0.1 * tol);
  const cplx p = pre.value();
  return {p * M.value, std::abs(p) * M.error};
}

AsaiReport verify_asai(const AsaiInput& in, double tol) {
  AsaiReport r;
  r.input = in;
  r.tol = tol;
  r.rhs = asai_rhs(in);
  r.lhs = asai_lhs_mellin(in, tol);
  r.rel_err = std::abs(r.lhs.value - r.rhs) / std::abs(r.rhs);
  r.pass = r.rel_err <= tol;
  return r;
}

}  // namespace whittaker
