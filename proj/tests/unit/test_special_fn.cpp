#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "whittaker/errors.hpp"
#include "whittaker/special_fn.hpp"

using namespace whittaker;
using std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// log-space relative distance, insensitive to overflow of the raw values
double log_rel(LogComplex a, LogComplex b) {
  return std::abs(std::exp(cplx(a.log_modulus - b.log_modulus, a.phase - b.phase)) - 1.0);
}

}  // namespace

TEST_CASE("log_gamma at integers and half integers") {
  CHECK(log_gamma(5.0).log_modulus == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(log_gamma(5.0).phase == doctest::Approx(0.0));
  CHECK(log_gamma(0.5).log_modulus == doctest::Approx(0.5 * std::log(pi)).epsilon(1e-14));
  // Gamma(-1/2) = -2 sqrt(pi)
  CHECK(rel(log_gamma(-0.5).value(), -2.0 * std::sqrt(pi)) < 1e-13);
}

TEST_CASE("log_gamma recurrence at 2+i") {
  cplx z(1.0, 1.0);
  CHECK(log_rel(log_gamma(z + 1.0), log_gamma(z) * LogComplex::from_value(z)) < 1e-13);
}

TEST_CASE("log_gamma stays finite where Gamma overflows") {
  LogComplex g = log_gamma(cplx(400.0, 300.0));
  CHECK(std::isfinite(g.log_modulus));
  CHECK(std::abs(g.phase) <= pi);
  // Stirling leading term
  cplx z(400.0, 300.0);
  cplx stirling = (z - 0.5) * std::log(z) - z + 0.5 * std::log(2 * pi);
  CHECK(std::abs(g.log_modulus - stirling.real()) < 1e-3);
}

TEST_CASE("log_gamma raises PoleError at nonpositive integers") {
  CHECK_THROWS_AS(log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
  CHECK_THROWS_AS(log_gamma(cplx(-2.0, 1e-14)), PoleError);
  CHECK_NOTHROW(log_gamma(cplx(-2.0, 1e-6)));
}

TEST_CASE("Tate Gamma factors") {
  CHECK(rel(gamma_R(1.0).value(), 1.0) < 1e-14);
  CHECK(rel(gamma_C(1.0).value(), 1.0 / pi) < 1e-14);
  cplx s(0.7, 0.3);
  CHECK(log_rel(gamma_C(s), gamma_R(s) * gamma_R(s + 1.0)) < 1e-12);
}

TEST_CASE("recurrence and duplication on random points") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> re(-20.0, 30.0), im(-40.0, 40.0);
  int checked = 0;
  for (int k = 0; k < 1000; ++k) {
    cplx z(re(rng), im(rng));
    if (near_gamma_pole(z, 1e-3) || near_gamma_pole(z / 2.0, 1e-3) ||
        near_gamma_pole((z + 1.0) / 2.0, 1e-3)) {
      continue;
    }
    CHECK(log_rel(log_gamma(z + 1.0), log_gamma(z) * LogComplex::from_value(z)) < 1e-12);
    CHECK(log_rel(gamma_C(z), gamma_R(z) * gamma_R(z + 1.0)) < 1e-12);
    ++checked;
  }
  CHECK(checked > 900);
}

TEST_CASE("LogComplex phase reduction and zero") {
  LogComplex a(0.0, 3 * pi);
  CHECK(a.phase == doctest::Approx(pi));
  LogComplex b(0.0, -pi);
  CHECK(b.phase == doctest::Approx(pi));
  CHECK(LogComplex::zero().is_zero());
  CHECK(LogComplex::zero().value() == cplx(0.0));
  CHECK(rel(LogComplex::from_value(cplx(-2.0, 0.5)).value(), cplx(-2.0, 0.5)) < 1e-15);
}

TEST_CASE("bessel_k against frozen high-precision values") {
  CHECK(rel(bessel_k(0.0, 1.0), 0.421024438240708333335627379213) < 1e-13);
  CHECK(rel(bessel_k(0.5, 1.0), 0.461068504447894558439575873876) < 1e-13);
  CHECK(rel(bessel_k(0.0, 4 * pi), 1.22120549436163043389935960799e-6) < 1e-12);
  CHECK(rel(bessel_k(0.3, 4 * pi), 1.22542506222073593582848455805e-6) < 1e-12);
}

TEST_CASE("bessel_k closed form at half order") {
  // K_{1/2}(x) = sqrt(pi / (2x)) e^{-x}
  for (double x : {0.1, 2.0, 15.0}) {
    CHECK(rel(bessel_k(0.5, x), std::sqrt(pi / (2 * x)) * std::exp(-x)) < 1e-12);
  }
}

TEST_CASE("bessel_k is even in the order") {
  for (cplx nu : {cplx(0.3, 0.0), cplx(0.2, 0.7), cplx(1.4, -0.2)}) {
    for (double x : {0.3, 1.0, 6.0}) {
      CHECK(rel(bessel_k(nu, x), bessel_k(-nu, x)) < 1e-12);
    }
  }
}

TEST_CASE("bessel_k rejects nonpositive argument") {
  CHECK_THROWS_AS(bessel_k(0.0, 0.0), DomainError);
  CHECK_THROWS_AS(bessel_k(0.0, -1.0), DomainError);
}

TEST_CASE("hermite polynomials") {
  CHECK(hermite(0, 0.7) == 1.0);
  CHECK(hermite(1, 0.7) == doctest::Approx(1.4));
  CHECK(hermite(3, 2.0) == doctest::Approx(8 * 8.0 - 12 * 2.0));
  for (double x : {-1.3, 0.0, 0.4, 2.5}) {
    for (int n = 1; n < 30; ++n) {
      double lhs = hermite(n + 1, x);
      double rhs = 2 * x * hermite(n, x) - 2 * n * hermite(n - 1, x);
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12).scale(1.0));
    }
  }
}
