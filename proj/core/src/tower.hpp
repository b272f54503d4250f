#pragma once

#include <span>
#include <vector>

#include "whittaker/arch_whittaker.hpp"
#include "whittaker/mb_engine.hpp"

namespace whittaker::detail {

void require_torus(int n, const TorusPointC& a);
void require_weight(int n, int kappa, const WeightIndexC& ell);

// Gamma factors of the closed-form Mellin transform of the rank-r spherical
// function f_mu (r = len(mu) in {1, 2, 3}) in variables 0..r-2 of an
// nvars-variable integrand, without the constant in front.
std::vector<GammaFactor> seed_gammas(const std::vector<cplx>& mu, int nvars);

// Recursion integrand in z_1..z_{n-2} (outer) and s_1..s_{n-1} (inner):
// seed(z) prod a_i^{-s_i} Gamma_C((s_i + kappa - l~_i - z_{i-1})/2 + i nu_1)
// Gamma_C((s_i + l~_i - z_i)/2 + i nu_1), last pair with |nu~| folded in.
// With shifted = false the i nu_1 terms move into prod a_i^{2 i nu_1}.
MBIntegrand tower_integrand(const std::vector<cplx>& nu, int kappa,
                            const std::vector<int>& ell_tilde, const TorusPointC& a,
                            LogComplex scale, bool shifted);

// Reduced propagation integral for n = 2, 3 on a log lattice.
Estimate propagation_value(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                           const TorusPointC& a, double tol);

// int prod b_i^{w_i} f_{[nu,kappa],ell}(b) d^x b over R_+^{n-1}, n = 2, 3, with f
// given by the reduced propagation integral.
Estimate propagation_mellin(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                            std::span<const cplx> w, double tol);

}  // namespace whittaker::detail
