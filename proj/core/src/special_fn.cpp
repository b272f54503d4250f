#include "whittaker/special_fn.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "whittaker/errors.hpp"

namespace whittaker {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLogPi = 1.1447298858494002;
constexpr double kLog2Pi = 1.8378770664093455;
constexpr double kLog2 = std::numbers::ln2;

// Lanczos approximation, g = 7, nine terms.
constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

cplx lanczos_log_gamma(cplx z) {
  z -= 1.0;
  cplx x = kLanczos[0];
  for (std::size_t k = 1; k < kLanczos.size(); ++k) x += kLanczos[k] / (z + double(k));
  const cplx t = z + kLanczosG + 0.5;
  return 0.5 * kLog2Pi + (z + 0.5) * std::log(t) - t + std::log(x);
}

// log sin(w), stable for large |Im w|.
cplx log_sin(cplx w) {
  if (w.imag() < 0) return std::conj(log_sin(std::conj(w)));
  // sin w = (i/2) e^{-iw} (1 - e^{2iw}), and |e^{2iw}| <= 1 here.
  const cplx i(0.0, 1.0);
  return -i * w + cplx(-kLog2, kPi / 2) + std::log(1.0 - std::exp(2.0 * i * w));
}

cplx log_gamma_raw(cplx z) {
  if (z.real() < 0.5) {
    return kLogPi - log_sin(kPi * z) - lanczos_log_gamma(1.0 - z);
  }
  return lanczos_log_gamma(z);
}

}  // namespace

double reduce_phase(double phase) {
  double r = std::remainder(phase, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

LogComplex LogComplex::from_value(cplx z) {
  if (z == cplx(0.0)) return zero();
  return {std::log(std::abs(z)), std::arg(z)};
}

LogComplex LogComplex::zero() {
  LogComplex r;
  r.log_modulus = -std::numeric_limits<double>::infinity();
  return r;
}

cplx LogComplex::value() const {
  if (is_zero()) return 0.0;
  return std::polar(std::exp(log_modulus), phase);
}

bool LogComplex::is_zero() const {
  return log_modulus == -std::numeric_limits<double>::infinity();
}

bool near_gamma_pole(cplx z, double tol) {
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z - r) < tol;
}

LogComplex log_gamma(cplx z) {
  if (near_gamma_pole(z)) {
    std::ostringstream os;
    os << "log_gamma: argument " << z << " is a pole of Gamma";
    throw PoleError(os.str());
  }
  return LogComplex::from_log(log_gamma_raw(z));
}

LogComplex gamma_R(cplx s) {
  LogComplex g = log_gamma(0.5 * s);
  return g * LogComplex::from_log(-0.5 * s * kLogPi);
}

LogComplex gamma_C(cplx s) {
  LogComplex g = log_gamma(s);
  return g * LogComplex::from_log(kLog2 - s * kLog2Pi);
}

cplx bessel_k(cplx order, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    std::ostringstream os;
    os << "bessel_k: x must be positive and finite, got " << x;
    throw DomainError(os.str());
  }
  // K_v(x) = int_0^inf e^{-x cosh t} cosh(v t) dt; the integrand is even and
  // entire in t, so the trapezoid rule on [0, T] converges geometrically.
  const double rv = std::abs(order.real());
  auto f = [&](double t) {
    const double c = x * std::cosh(t);
    return 0.5 * (std::exp(order * t - c) + std::exp(-order * t - c));
  };
  auto log_envelope = [&](double t) { return rv * t - x * std::cosh(t); };

  const double t_peak = std::asinh(rv / x);
  const double peak = log_envelope(t_peak);
  constexpr double kTailDrop = 45.0;  // e^{-45} ~ 3e-20 relative
  double T = 1.0;
  while (T <= t_peak || log_envelope(T) > peak - kTailDrop) T *= 2.0;

  double h = 0.5;
  cplx sum = 0.5 * f(0.0);
  for (int k = 1; k * h <= T; ++k) sum += f(k * h);
  cplx estimate = h * sum;
  for (int level = 0; level < 12; ++level) {
    cplx mid = 0.0;
    for (int k = 0; (k + 0.5) * h <= T; ++k) mid += f((k + 0.5) * h);
    sum += mid;
    h *= 0.5;
    const cplx refined = h * sum;
    const double change = std::abs(refined - estimate);
    estimate = refined;
    if (change <= 1e-15 * std::abs(refined)) break;
  }
  return estimate;
}

double hermite(int n, double x) {
  if (n < 0) throw DomainError("hermite: degree must be nonnegative");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * x;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace whittaker
