#pragma once

#include <array>
#include <map>
#include <vector>

#include "whittaker/mb_engine.hpp"
#include "whittaker/special_fn.hpp"

namespace whittaker {

struct Estimate {
  cplx value;
  double error = 0.0;
};

struct ArchOptions {
  double tol = 1e-8;
  double mb_height = 40.0;
  double mb_step = 0.1;
  int max_refinements = 3;
  int threads = 1;

  EvalOptions eval() const { return {tol, 0.0, max_refinements, threads}; }
};

struct SphericalParamsC {
  std::vector<cplx> nu;

  int n() const { return int(nu.size()); }
  cplx abs_nu() const;                 // nu_1 + ... + nu_n
  std::vector<cplx> tilde() const;     // (nu_2 - nu_1, ..., nu_n - nu_1)
};

// Principal series [nu, kappa] with kappa-vector (kappa, 0, ..., 0).
struct MinimalTypeParamsC {
  std::vector<cplx> nu;
  int kappa = 0;

  int n() const { return int(nu.size()); }
  SphericalParamsC spherical() const { return {nu}; }
};

struct WeightIndexC {
  std::vector<int> ell;

  int total() const;
  std::vector<int> partial_sums() const;  // l~_i = l_1 + ... + l_i
  // Every ell of length n with entries >= 0 summing to kappa.
  static std::vector<WeightIndexC> all(int n, int kappa);
};

struct TorusPointC {
  std::vector<double> a;

  // delta_{B_n(C)}(t(a))^{1/2} = prod_j a_j^{j (n - j)}.
  double delta_half() const;
};

struct MiyazakiParams {
  int kappa = 2;
  cplx w = 0.0;
};

using Monomial = std::array<int, 3>;  // (n1, n2, n3), n1 + n2 + n3 = kappa
using MonomialValues = std::map<Monomial, Estimate>;

// --- Ishii–Stade spherical functions -------------------------------------

// f_nu(a); n = 2 is a^{nu1+nu2} K_{nu1-nu2}(4 pi a), n = 3, 4 by recursion.
Estimate f_spherical(const SphericalParamsC& params, const TorusPointC& a,
                     const ArchOptions& opts = {});

// Mellin transform of f_mu for rank r = len(mu) in {1, 2, 3}; z has r - 1
// entries. Rank 1 is the constant 1, rank 2 the closed form
// 2^{-4} Gamma_C(z/2 + mu_1) Gamma_C(z/2 + mu_2), rank 3 is numerical.
cplx mellin_f_spherical(const SphericalParamsC& mu, const std::vector<cplx>& z,
                        const ArchOptions& opts = {});

// The MB integrand used for f_spherical at n = 3 (variables z, s1, s2).
MBIntegrand spherical_integrand(const SphericalParamsC& params, const TorusPointC& a);

// --- Minimal K-type Whittaker functions on GL_n(C), n = 2, 3 -------------

// The contour-integral formula (variables z_1..z_{n-2}, then s_1..s_{n-1}).
MBIntegrand minimal_type_integrand(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                                   const TorusPointC& a);

// Same formula before the change of variables s_i -> s_i + 2 i nu_1:
// prod a_i^{2 i nu_1} times Gamma factors without the nu_1 terms.
MBIntegrand minimal_type_integrand_unshifted(const MinimalTypeParamsC& params,
                                             const WeightIndexC& ell, const TorusPointC& a);

Estimate whittaker_c_mb(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                        const TorusPointC& a, const ArchOptions& opts = {});

// Independent path through the reduced propagation integral over R_+^{n-1}.
Estimate whittaker_c_direct(const MinimalTypeParamsC& params, const WeightIndexC& ell,
                            const TorusPointC& a, const ArchOptions& opts = {});

// --- GL_3(R) discrete series (Miyazaki) -----------------------------------

// The double contour integral for one monomial, prefactor included.
MBIntegrand miyazaki_integrand(const MiyazakiParams& params, const Monomial& m, double a1,
                               double a2);

MonomialValues miyazaki_mb(const MiyazakiParams& params, double a1, double a2,
                           const ArchOptions& opts = {});
MonomialValues miyazaki_direct(const MiyazakiParams& params, double a1, double a2,
                               const ArchOptions& opts = {});

// The Hermite/Gaussian integral I_{n1,n2,n3}(a1, a2) without prefactors,
// and its closed-form Mellin transform at (s1, s2).
Estimate miyazaki_integral(const MiyazakiParams& params, const Monomial& m, double a1, double a2,
                           double tol = 1e-10);
cplx miyazaki_integral_mellin(const MiyazakiParams& params, const Monomial& m, cplx s1, cplx s2);

// --- Lemma checks -----------------------------------------------------------

struct LemmaCase {
  std::string lemma;
  std::string label;
  cplx lhs;
  cplx rhs;
  double rel_err = 0.0;
};

struct LemmaReport {
  std::vector<LemmaCase> cases;
  std::map<std::string, double> max_rel_err;  // per lemma
};

// Closed forms (right-hand sides) of the four lemmas.
cplx ft1_closed_form(int n, int m, double a2, double t1, double t2);
cplx mellin1_part1_rhs(int n, double a, double b, cplx s);
cplx mellin1_part2_closed_form(cplx s1, cplx s2);
cplx ft2_closed_form(int N, double a);
cplx ft3_closed_form(int kappa, const WeightIndexC& ell, double t1, double alpha1, double alpha2);

// Quadrature sides.
cplx ft1_quadrature(int n, int m, double a2, double t1, double t2);
cplx mellin1_part1_lhs(int n, double a, double b, cplx s);
cplx mellin1_part2_quadrature(cplx s1, cplx s2);
cplx ft2_quadrature(int N, double a);
cplx ft3_quadrature(int kappa, const WeightIndexC& ell, double t1, double alpha1, double alpha2);

LemmaReport lemma_checks();

// --- Ishii–Stade Mellin self-consistency (rank 2) -------------------------

struct ConsistencyResult {
  cplx lhs;
  Estimate rhs;
};

ConsistencyResult ishii_stade_consistency(const std::array<cplx, 2>& mu, cplx w, cplx sigma,
                                          const ArchOptions& opts = {});

}  // namespace whittaker
