#pragma once

#include <string>
#include <vector>

#include "whittaker/special_fn.hpp"

namespace whittaker {

// Principal series [nu, kappa] of GL_n(C) with kappa-vector (kappa, 0, ..., 0)
// and a point s of the Asai zeta integral.
struct AsaiInput {
  int n = 2;
  std::vector<cplx> nu;
  int kappa = 0;
  cplx s = 1.0;

  int epsilon() const { return kappa % 2; }
};

enum class AsaiGammaKind { R, C };

// Gamma_kind(constant + slope * s).
struct AsaiGammaTerm {
  AsaiGammaKind kind = AsaiGammaKind::R;
  cplx constant = 0.0;
  double slope = 1.0;

  cplx argument(cplx s) const { return constant + slope * s; }
};

// prod gamma_terms(s) * 2^{two.constant + two.slope s} * pi^{pi.constant + pi.slope s}.
struct LFactor {
  struct Exponent {
    cplx constant = 0.0;
    double slope = 0.0;
  };
  std::vector<AsaiGammaTerm> gamma_terms;
  Exponent two;
  Exponent pi;

  LogComplex evaluate(cplx s) const;  // PoleError at poles
};

LFactor asai_l_factor(const AsaiInput& in);

// 2^{n(n-2)} Gamma_R(s + 2 nu_1 + kappa) / Gamma_R(s + 2 nu_1 + eps) L(s).
cplx asai_rhs(const AsaiInput& in);

struct AsaiEstimate {
  cplx value;
  double error = 0.0;
};

// 2^{-2 + (ns + kappa + 2|nu|)/2} Gamma_C((ns + kappa)/2 + |nu|) times the
// numerical Mellin transform of f_{[nu,kappa],(0,...,0,kappa)} at
// (s, 2s, ..., (n-1)s). n = 2, 3.
AsaiEstimate asai_lhs_mellin(const AsaiInput& in, double tol = 1e-8);

struct AsaiReport {
  AsaiInput input;
  AsaiEstimate lhs;
  cplx rhs;
  double rel_err = 0.0;
  double tol = 0.0;
  bool pass = false;
};

AsaiReport verify_asai(const AsaiInput& in, double tol = 1e-8);

}  // namespace whittaker
