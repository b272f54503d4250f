#pragma once

#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whittaker/rational.hpp"
#include "whittaker/special_fn.hpp"

namespace whittaker {

enum class GammaKind { Plain, R, C };
enum class Position { Numerator, Denominator };

// Gamma_kind(constant + sum_i coeffs[i] * s_i), or its reciprocal.
struct GammaFactor {
  GammaKind kind = GammaKind::Plain;
  cplx constant = 0.0;
  std::vector<Rational> coeffs;
  Position position = Position::Numerator;

  cplx argument(std::span<const cplx> s) const;
  // Value at a given argument; reciprocals vanish at poles instead of throwing.
  LogComplex evaluate_at(cplx arg) const;
};

// base^(exponent_constant + sum_i exponent_coeffs[i] * s_i), base > 0.
struct PowerFactor {
  double base = 1.0;
  cplx exponent_constant = 0.0;
  std::vector<Rational> exponent_coeffs;
};

// Factor given by a callback, for ingredients without a Gamma-product form
// (numerically tabulated Mellin transforms). The callback sees the whole
// variable vector; only the listed variables are guaranteed to be set.
// Contour constraints for such factors are the caller's responsibility.
struct ExternalFactor {
  std::vector<int> vars;
  std::function<LogComplex(std::span<const cplx>)> fn;
};

// Iterated contour integrand: prefactor * prod Gamma factors * prod powers,
// integrated against prod ds_i / (2 pi i). Variables are nested in index
// order: variable 0 is the outermost integral.
class MBIntegrand {
 public:
  static constexpr int kMaxVariables = 5;

  MBIntegrand(int nvars, LogComplex prefactor, std::vector<GammaFactor> gammas,
              std::vector<PowerFactor> powers = {}, std::vector<ExternalFactor> externals = {});

  int nvars() const { return nvars_; }
  const LogComplex& prefactor() const { return prefactor_; }
  const std::vector<GammaFactor>& gammas() const { return gammas_; }
  const std::vector<PowerFactor>& powers() const { return powers_; }
  const std::vector<ExternalFactor>& externals() const { return externals_; }

  MBIntegrand with_prefactor(LogComplex p) const;

  // Integrand value at a point (no 1/(2 pi i) weights).
  LogComplex evaluate(std::span<const cplx> s) const;

 private:
  int nvars_;
  LogComplex prefactor_;
  std::vector<GammaFactor> gammas_;
  std::vector<PowerFactor> powers_;
  std::vector<ExternalFactor> externals_;
};

// Vertical lines Re s_i = sigma[i], truncated at |Im s| <= height, step h.
struct ContourSpec {
  std::vector<double> sigma;
  double height = 40.0;
  double step = 0.1;
};

struct EvalOptions {
  double tol = 1e-8;      // relative
  double abs_tol = 0.0;   // accepted absolute error, for values that may vanish
  int max_refinements = 3;
  int threads = 1;
};

struct MBResult {
  cplx value;
  double error_estimate = 0.0;
  ContourSpec contour;  // grid that produced value
};

inline constexpr double kDefaultMargin = 0.5;
inline constexpr double kDefaultStart = 10.0;

// Every numerator factor has Re(argument) >= margin on the lines.
bool contour_is_feasible(const MBIntegrand& f, std::span<const double> sigma, double margin = 0.0);

// Deterministic feasible contour (exact Fourier-Motzkin elimination in
// nesting order). Each variable takes the midpoint of its feasible interval,
// or its finite bound when one-sided, or kDefaultStart when unconstrained.
ContourSpec find_contour(const MBIntegrand& f, double margin = kDefaultMargin);

// Clamp a preferred sigma into the feasible set, variable by variable.
ContourSpec project_contour(const MBIntegrand& f, std::span<const double> preferred,
                            double margin = kDefaultMargin);

// Feasible contour near the real-axis saddle: coordinate-wise minimisation
// of |integrand(sigma)|, which keeps cancellation along the lines small.
ContourSpec optimize_contour(const MBIntegrand& f, double margin = kDefaultMargin);

MBResult eval_mb(const MBIntegrand& f, const ContourSpec& contour, const EvalOptions& opts = {});

struct BarnesResult {
  cplx lhs;
  double lhs_error = 0.0;
  cplx rhs;
};

// Barnes' first lemma in Gamma_C form.
BarnesResult barnes_check(cplx a, cplx b, cplx c, cplx d, const EvalOptions& opts = {});

// Substitute s_i -> s_i + shift[i].
MBIntegrand shift_variables(const MBIntegrand& f, std::span<const cplx> shift);

// Power constants folded into the prefactor, powers merged by base, factors
// sorted. Two integrands are structurally equal when their canonical forms
// agree factor by factor.
MBIntegrand canonical_form(const MBIntegrand& f);
bool structurally_equal(const MBIntegrand& a, const MBIntegrand& b, double tol = 1e-12);

// JSON documents (integrands with external factors are rejected).
std::string to_json(const MBIntegrand& f);
MBIntegrand integrand_from_json(std::string_view text);
std::string to_json(const ContourSpec& c);
ContourSpec contour_from_json(std::string_view text);

}  // namespace whittaker
