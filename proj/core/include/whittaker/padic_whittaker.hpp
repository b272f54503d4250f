#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "whittaker/exact.hpp"

namespace whittaker {

// Non-increasing integer vector (a dominant weight of GL_n).
class DominantWeight {
 public:
  DominantWeight() = default;
  explicit DominantWeight(std::vector<long> entries);  // throws InvalidArgument if increasing
  const std::vector<long>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  long operator[](std::size_t i) const { return entries_[i]; }
  long total() const;

 private:
  std::vector<long> entries_;
};

// Nonzero Satake parameters alpha_1..alpha_n.
class SatakeParams {
 public:
  SatakeParams() = default;
  explicit SatakeParams(std::vector<GaussianRational> alphas);  // throws DomainError on zero
  const std::vector<GaussianRational>& alphas() const { return alphas_; }
  std::size_t size() const { return alphas_.size(); }

 private:
  std::vector<GaussianRational> alphas_;
};

// q^{q_exponent} * value with q kept symbolic; q_exponent has denominator <= 2.
struct HalfPowerValue {
  mpq_class q_exponent;
  GaussianRational value;

  std::string exponent_str() const { return q_exponent.get_str(); }
  friend bool operator==(const HalfPowerValue& a, const HalfPowerValue& b) {
    return a.q_exponent == b.q_exponent && a.value == b.value;
  }
};

HalfPowerValue operator*(const HalfPowerValue& a, const HalfPowerValue& b);
// Sum of values carrying the same power of q; throws InvalidArgument otherwise.
HalfPowerValue operator+(const HalfPowerValue& a, const HalfPowerValue& b);

// Gelfand-Tsetlin interleaving lam_i >= mu_i >= lam_{i+1}.
bool interleaves(const DominantWeight& lam, const DominantWeight& mu);

// All mu with lam > mu, in lexicographic order.
std::vector<DominantWeight> interleaved_weights(const DominantWeight& lam);

// det(alpha_i^{lam_j + n - j}) / det(alpha_i^{n - j}); distinct alphas only.
GaussianRational schur_bialternant(const DominantWeight& lam, const SatakeParams& alpha);

// Branching recursion over the last parameter; any alphas.
GaussianRational schur_branching(const DominantWeight& lam, const SatakeParams& alpha);

// delta_B^{-1/2}(varpi^lam) * W(varpi^lam) = s_lam(alpha), returned as
// q^{-sum lam_i (n-2i+1)/2} * s_lam(alpha).
HalfPowerValue shintani_value(const DominantWeight& lam, const SatakeParams& alpha, int n);

// Exact check of s_lam(alpha, 1) = sum_{lam > mu} s_mu(alpha), assembled
// from Whittaker values with the modulus factors carried symbolically.
bool verify_shintani_recursion(const DominantWeight& lam, const SatakeParams& alpha);

}  // namespace whittaker
