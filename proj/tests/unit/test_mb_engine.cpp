#include <doctest.h>

#include <cmath>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "whittaker/arch_whittaker.hpp"
#include "whittaker/errors.hpp"
#include "whittaker/mb_engine.hpp"
#include "whittaker/suites.hpp"

using namespace whittaker;
using std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const Rational kHalf(1, 2);

MBIntegrand gamma_power(double x) {
  return MBIntegrand(1, LogComplex(), {{GammaKind::Plain, 0.0, {Rational(1)}, Position::Numerator}},
                     {{x, 0.0, {Rational(-1)}}});
}

// 2^{-4} Gamma_C(s/2 + z/4) Gamma_C(s/2 - z/4) x^{-s}, the inverse Mellin
// transform of K_{z/2}(4 pi x).
MBIntegrand bessel_integrand(cplx z, double x) {
  return MBIntegrand(1, LogComplex(-4.0 * std::log(2.0), 0.0),
                     {{GammaKind::C, z / 4.0, {kHalf}, Position::Numerator},
                      {GammaKind::C, -z / 4.0, {kHalf}, Position::Numerator}},
                     {{x, 0.0, {Rational(-1)}}});
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool same_bits(cplx a, cplx b) { return std::memcmp(&a, &b, sizeof(cplx)) == 0; }

}  // namespace

TEST_CASE("find_contour keeps every numerator argument to the right of the margin") {
  MBIntegrand f = gamma_power(1.7);
  ContourSpec c = find_contour(f, 0.5);
  REQUIRE(c.sigma.size() == 1);
  CHECK(c.sigma[0] >= 0.5);
  CHECK(contour_is_feasible(f, c.sigma, 0.5));
  CHECK_FALSE(contour_is_feasible(f, std::vector<double>{0.2}, 0.5));
}

TEST_CASE("find_contour on a two-sided Barnes integrand picks the midpoint") {
  // Gamma(s + 1) Gamma(2 - s): feasible strip -0.5 <= sigma <= 1.5 at margin 0.5
  MBIntegrand f(1, LogComplex(),
                {{GammaKind::Plain, 1.0, {Rational(1)}, Position::Numerator},
                 {GammaKind::Plain, 2.0, {Rational(-1)}, Position::Numerator}});
  ContourSpec c = find_contour(f, 0.5);
  CHECK(c.sigma[0] == doctest::Approx(0.5));
}

TEST_CASE("find_contour reports an empty feasible set") {
  // Gamma(s) Gamma(-s - 1) needs sigma > 0 and sigma < -1
  MBIntegrand f(1, LogComplex(),
                {{GammaKind::Plain, 0.0, {Rational(1)}, Position::Numerator},
                 {GammaKind::Plain, -1.0, {Rational(-1)}, Position::Numerator}});
  CHECK_THROWS_AS(find_contour(f, 0.5), InfeasibleContour);
}

TEST_CASE("integrands without decay are rejected at construction") {
  CHECK_THROWS_AS(MBIntegrand(1, LogComplex(), {{GammaKind::Plain, 0.0, {Rational(1)}, Position::Denominator}}),
                  InvalidArgument);
  CHECK_THROWS_AS(MBIntegrand(1, LogComplex(), {}, {{2.0, 0.0, {Rational(-1)}}}), InvalidArgument);
  CHECK_THROWS_AS(MBIntegrand(2, LogComplex(), {{GammaKind::Plain, 0.0, {Rational(1), Rational(0)}}}),
                  InvalidArgument);
}

TEST_CASE("inverse Mellin transform of Gamma gives the exponential") {
  MBIntegrand f = gamma_power(1.7);
  MBResult r = eval_mb(f, find_contour(f), {1e-10});
  CHECK(rel(r.value, std::exp(-1.7)) < 1e-10);
  CHECK(r.error_estimate < 1e-10 * std::exp(-1.7));
}

TEST_CASE("Gamma_C product reproduces the Bessel function") {
  MBIntegrand at_one = bessel_integrand(0.6, 1.0);
  MBResult r = eval_mb(at_one, find_contour(at_one), {1e-10});
  CHECK(rel(r.value, 1.22542506222073593582848455805e-6) < 1e-9);

  cplx z(0.4, 0.6);
  MBIntegrand f = bessel_integrand(z, 0.8);
  MBResult r2 = eval_mb(f, find_contour(f), {1e-10});
  CHECK(rel(r2.value, bessel_k(z / 2.0, 4 * pi * 0.8)) < 1e-9);
}

TEST_CASE("poles on the contour are reported") {
  MBIntegrand f = gamma_power(1.7);
  CHECK_THROWS_AS(eval_mb(f, ContourSpec{{0.0}}), PoleOnContour);
  CHECK_THROWS_AS(eval_mb(f, ContourSpec{{-0.5}}), PoleOnContour);
  CHECK_THROWS_AS(eval_mb(f, ContourSpec{{1.0, 1.0}}), LengthMismatch);
}

TEST_CASE("unreachable tolerance raises Unconverged") {
  MBIntegrand f = gamma_power(1.7);
  CHECK_THROWS_AS(eval_mb(f, find_contour(f), {1e-20, 0.0, 1}), Unconverged);
}

TEST_CASE("Barnes first lemma") {
  BarnesResult half = barnes_check(0.5, 0.5, 0.5, 0.5, {1e-10});
  CHECK(rel(half.rhs, 0.810569469138702171551035705678) < 1e-13);
  CHECK(rel(half.lhs, half.rhs) < 1e-9);

  BarnesResult r = barnes_check(0.3, 0.7, 0.5, 0.9, {1e-10});
  CHECK(rel(r.lhs, r.rhs) < 1e-9);
  BarnesResult swapped = barnes_check(0.7, 0.3, 0.9, 0.5, {1e-10});
  CHECK(rel(swapped.lhs, r.lhs) < 1e-9);

  BarnesResult c = barnes_check(cplx(0.4, 0.3), cplx(0.8, -0.2), cplx(0.6, 0.1), 1.1, {1e-10});
  CHECK(rel(c.lhs, c.rhs) < 1e-9);
}

TEST_CASE("contour shift within the feasible region leaves the value unchanged") {
  MBIntegrand f = bessel_integrand(0.6, 0.8);
  MBResult a = eval_mb(f, ContourSpec{{0.8}}, {1e-10});
  MBResult b = eval_mb(f, ContourSpec{{1.5}}, {1e-10});
  CHECK(rel(a.value, b.value) < 1e-9);
}

TEST_CASE("conjugate parameters give the conjugate value") {
  cplx z(0.4, 0.6);
  MBIntegrand f = bessel_integrand(z, 0.8);
  MBIntegrand g = bessel_integrand(std::conj(z), 0.8);
  cplx vf = eval_mb(f, find_contour(f), {1e-11}).value;
  cplx vg = eval_mb(g, find_contour(g), {1e-11}).value;
  CHECK(rel(vg, std::conj(vf)) < 1e-12);
}

TEST_CASE("thread count does not change a single bit") {
  for (const auto& [name, f] : integrand_corpus()) {
    if (f.nvars() > 2) continue;  // the three-variable cases run in the engine suite
    CAPTURE(name);
    ContourSpec c = optimize_contour(f, 0.1);
    MBResult one = eval_mb(f, c, {1e-9, 0.0, 3, 1});
    MBResult many = eval_mb(f, c, {1e-9, 0.0, 3, 3});
    CHECK(same_bits(one.value, many.value));
    CHECK(one.error_estimate == many.error_estimate);
  }
}

TEST_CASE("error estimate bounds the change under grid refinement") {
  // Halving the step and doubling the height moves the value by less than the
  // reported error.
  int honest = 0, total = 0;
  for (const auto& [name, f] : integrand_corpus()) {
    if (f.nvars() > 2) continue;
    CAPTURE(name);
    ContourSpec c = optimize_contour(f, 0.1);
    MBResult r = eval_mb(f, c, {1e-9, 0.0, 3, 4});
    // r.contour.step is the step of the grid that produced r.value; a run
    // started there returns the value of the grid at half that step. The loose
    // tolerance accepts that first pass.
    ContourSpec finer = r.contour;
    finer.height *= 2;
    MBResult s = eval_mb(f, finer, {1e-6, 0.0, 3, 4});
    REQUIRE(s.contour.step == doctest::Approx(r.contour.step / 2));
    ++total;
    if (std::abs(s.value - r.value) <= r.error_estimate) ++honest;
  }
  CHECK(honest == total);
}

TEST_CASE("shifting variables and canonical form") {
  MBIntegrand f = gamma_power(1.7);
  std::vector<cplx> shift{cplx(1.0)};
  MBIntegrand g = shift_variables(f, shift);
  // Gamma(s + 1) 1.7^{-s-1}
  CHECK(g.gammas()[0].constant == cplx(1.0));
  std::vector<cplx> s{cplx(0.8, 0.3)};
  std::vector<cplx> s1{s[0] + 1.0};
  CHECK(rel(g.evaluate(s).value(), f.evaluate(s1).value()) < 1e-14);
  CHECK(structurally_equal(g, canonical_form(g)));
  CHECK_FALSE(structurally_equal(f, g));
}

TEST_CASE("minimal K-type integrand at kappa zero is the Ishii-Stade integrand up to 2^4") {
  MinimalTypeParamsC p{{0.1, cplx(0.0, 0.2), -0.1}, 0};
  TorusPointC a{{0.7, 1.3}};
  MBIntegrand formula = minimal_type_integrand(p, {{0, 0, 0}}, a);
  MBIntegrand is = spherical_integrand(p.spherical(), a);
  MBIntegrand scaled = is.with_prefactor(is.prefactor() * LogComplex(4.0 * std::log(2.0), 0.0));
  CHECK(structurally_equal(canonical_form(formula), canonical_form(scaled)));
  CHECK_FALSE(structurally_equal(canonical_form(formula), canonical_form(is)));
}

TEST_CASE("shifting s_i by 2 i nu_1 in the unshifted formula gives the contour formula integrand") {
  MinimalTypeParamsC p{{cplx(0.1, 0.05), cplx(0.0, 0.2), -0.1}, 2};
  TorusPointC a{{0.7, 1.3}};
  for (const auto& ell : WeightIndexC::all(3, 2)) {
    MBIntegrand u = minimal_type_integrand_unshifted(p, ell, a);
    std::vector<cplx> shift(u.nvars(), 0.0);
    // variables are z_1, then s_1, s_2; s_i moves by 2 i nu_1 with i the index
    shift[1] = 2.0 * p.nu[0];
    shift[2] = 4.0 * p.nu[0];
    MBIntegrand shifted = shift_variables(u, shift);
    CHECK(structurally_equal(canonical_form(shifted),
                             canonical_form(minimal_type_integrand(p, ell, a)), 1e-12));
  }
}

TEST_CASE("JSON round trip against the golden document") {
  const std::string golden = read_file(WHITTAKER_TEST_DATA "/bessel_integrand.json");
  MBIntegrand f = integrand_from_json(golden);
  CHECK(to_json(f) == golden);
  CHECK(structurally_equal(f, bessel_integrand(0.6, 0.8)));

  ContourSpec c{{0.6}, 30.0, 0.125};
  ContourSpec back = contour_from_json(to_json(c));
  CHECK(back.sigma == c.sigma);
  CHECK(back.height == c.height);
  CHECK(back.step == c.step);
}

TEST_CASE("malformed JSON documents are rejected") {
  CHECK_THROWS_AS(integrand_from_json("{"), InvalidArgument);
  CHECK_THROWS_AS(integrand_from_json(R"({"nvars": 1})"), InvalidArgument);
  CHECK_THROWS_AS(contour_from_json(R"({"sigma": "x"})"), InvalidArgument);
}
