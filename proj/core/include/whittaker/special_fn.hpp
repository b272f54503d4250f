#pragma once

#include <complex>

namespace whittaker {

using cplx = std::complex<double>;

// Reduce an angle to (-pi, pi].
double reduce_phase(double phase);

// exp(log_modulus + i*phase), kept in log form so long products of Gamma
// values never overflow. A log_modulus of -inf represents zero.
struct LogComplex {
  double log_modulus = 0.0;
  double phase = 0.0;

  LogComplex() = default;
  LogComplex(double log_mod, double ph) : log_modulus(log_mod), phase(reduce_phase(ph)) {}

  static LogComplex from_log(cplx w) { return {w.real(), w.imag()}; }
  static LogComplex from_value(cplx z);
  static LogComplex zero();

  cplx value() const;
  bool is_zero() const;
  LogComplex inverse() const { return {-log_modulus, -phase}; }

  LogComplex& operator*=(const LogComplex& o) {
    *this = LogComplex(log_modulus + o.log_modulus, phase + o.phase);
    return *this;
  }
  LogComplex& operator/=(const LogComplex& o) {
    *this = LogComplex(log_modulus - o.log_modulus, phase - o.phase);
    return *this;
  }
  friend LogComplex operator*(LogComplex a, const LogComplex& b) { return a *= b; }
  friend LogComplex operator/(LogComplex a, const LogComplex& b) { return a /= b; }
};

// Distance below which an argument counts as sitting on a Gamma pole.
inline constexpr double kPoleTolerance = 1e-12;

// True when z lies within tol of a nonpositive integer.
bool near_gamma_pole(cplx z, double tol = kPoleTolerance);

// log Gamma(z) with the phase reduced; throws PoleError near 0, -1, -2, ...
LogComplex log_gamma(cplx z);

// Gamma_R(s) = pi^{-s/2} Gamma(s/2), Gamma_C(s) = 2 (2 pi)^{-s} Gamma(s).
LogComplex gamma_R(cplx s);
LogComplex gamma_C(cplx s);

// Modified Bessel function of the second kind K_order(x), x > 0.
cplx bessel_k(cplx order, double x);

// Physicists' Hermite polynomial H_n(x).
double hermite(int n, double x);

}  // namespace whittaker
