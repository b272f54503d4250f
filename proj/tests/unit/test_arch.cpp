#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "whittaker/arch_whittaker.hpp"
#include "whittaker/errors.hpp"

using namespace whittaker;
using std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

constexpr double kK0At4Pi = 1.22120549436163043389935960799e-6;

// The direct path carries the propagation constant 2^4 relative to f.
constexpr double kPropagationScale = 16.0;

// Trapezoid in u = log a of a^z f_mu(a) over R_+, independent of the closed form.
cplx rank2_mellin_quadrature(const std::vector<cplx>& mu, cplx z) {
  const double h = 0.02;
  cplx sum = 0.0;
  for (double u = -90.0; u <= 3.0; u += h) {
    const double a = std::exp(u);
    sum += std::exp((z + mu[0] + mu[1]) * u) * bessel_k(mu[0] - mu[1], 4 * pi * a);
  }
  return h * sum;
}

// Closed form of the rank-3 Mellin transform from Barnes' first lemma.
cplx rank3_mellin_closed(const std::vector<cplx>& mu, cplx z1, cplx z2) {
  LogComplex v(-2.0 * std::log(2.0), 0.0);
  for (cplx m : mu) v *= gamma_C(0.5 * z1 + m);
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) v *= gamma_C(0.5 * z2 + mu[i] + mu[j]);
  }
  v /= gamma_C(0.5 * (z1 + z2) + mu[0] + mu[1] + mu[2]);
  return v.value();
}

}  // namespace

TEST_CASE("weight indices and torus points") {
  CHECK(WeightIndexC::all(3, 2).size() == 6);
  CHECK(WeightIndexC::all(2, 0).size() == 1);
  WeightIndexC ell{{1, 0, 2}};
  CHECK(ell.total() == 3);
  CHECK(ell.partial_sums() == std::vector<int>{1, 1, 3});
  TorusPointC a{{2.0, 3.0}};
  CHECK(a.delta_half() == doctest::Approx(2.0 * 2.0 * 3.0 * 3.0));  // a1^2 a2^2 at n = 3
  SphericalParamsC p{{0.1, 0.4, cplx(0.0, 1.0)}};
  CHECK(rel(p.abs_nu(), cplx(0.5, 1.0)) < 1e-15);
  CHECK(rel(p.tilde()[1], cplx(-0.1, 1.0)) < 1e-15);
}

TEST_CASE("f_spherical at n = 2 is the Bessel base case") {
  Estimate e = f_spherical({{0.0, 0.0}}, {{1.0}});
  CHECK(rel(e.value, kK0At4Pi) < 1e-12);

  SphericalParamsC p{{0.3, cplx(0.0, -0.1)}}, q{{cplx(0.0, -0.1), 0.3}};
  cplx frozen(5.6868400083758570603470796103e-5, 2.21352392061199475663290719525e-6);
  CHECK(rel(f_spherical(p, {{0.7}}).value, frozen) < 1e-11);
  CHECK(rel(f_spherical(p, {{0.7}}).value, f_spherical(q, {{0.7}}).value) < 1e-10);
}

TEST_CASE("f_spherical at n = 2 is real and positive for real parameters") {
  for (double a : {0.05, 0.4, 1.0, 2.5}) {
    for (double v : {0.0, 0.35, 1.2}) {
      cplx f = f_spherical({{v, -0.5 * v}}, {{a}}).value;
      CHECK(f.imag() == 0.0);
      CHECK(f.real() > 0.0);
    }
  }
}

TEST_CASE("rank restrictions") {
  CHECK_THROWS_AS(f_spherical({{0.0, 0.0, 0.0, 0.0, 0.0}}, {{1.0, 1.0, 1.0, 1.0}}), UnsupportedRank);
  CHECK_THROWS_AS(f_spherical({{0.0, 0.0, 0.0}}, {{1.0}}), LengthMismatch);
  CHECK_THROWS_AS(whittaker_c_mb({{0.0, 0.0, 0.0, 0.0}, 0}, {{0, 0, 0, 0}}, {{1.0, 1.0, 1.0}}),
                  UnsupportedRank);
  CHECK_THROWS_AS(whittaker_c_mb({{0.0, 0.0}, 1}, {{0, 0}}, {{1.0}}), InvalidArgument);
}

TEST_CASE("rank 1 and rank 2 Mellin transforms") {
  CHECK(mellin_f_spherical({{0.4}}, {}) == cplx(1.0));
  // int_0^inf a^2 K_0(4 pi a) da / a = 1 / (16 pi^2)
  CHECK(rel(mellin_f_spherical({{0.0, 0.0}}, {2.0}), 0.00633257397764611071524246645061) < 1e-13);
  CHECK_THROWS_AS(mellin_f_spherical({{0.0, 0.0}}, {-0.5}), DomainError);
  CHECK_THROWS_AS(mellin_f_spherical({{0.0, 0.0}}, {1.0, 1.0}), LengthMismatch);
}

TEST_CASE("rank 2 closed form agrees with quadrature") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> mu_re(-0.3, 0.3), mu_im(-0.5, 0.5), z_re(1.0, 3.0),
      z_im(-2.0, 2.0);
  for (int k = 0; k < 10; ++k) {
    std::vector<cplx> mu{{mu_re(rng), mu_im(rng)}, {mu_re(rng), mu_im(rng)}};
    cplx z(z_re(rng), z_im(rng));
    CAPTURE(mu[0]);
    CAPTURE(mu[1]);
    CAPTURE(z);
    CHECK(rel(mellin_f_spherical({mu}, {z}), rank2_mellin_quadrature(mu, z)) < 1e-8);
  }
}

TEST_CASE("rank 3 numerical Mellin transform matches the Barnes closed form") {
  ArchOptions o;
  o.tol = 1e-9;
  for (auto [mu, z1, z2] : {std::tuple{std::vector<cplx>{0.2, 0.0, -0.2}, cplx(1.5), cplx(2.0)},
                            std::tuple{std::vector<cplx>{cplx(0.1, 0.3), -0.1, cplx(0.0, -0.3)},
                                       cplx(1.2, 0.4), cplx(2.5, -0.3)}}) {
    CHECK(rel(mellin_f_spherical({mu}, {z1, z2}, o), rank3_mellin_closed(mu, z1, z2)) < 1e-7);
  }
}

TEST_CASE("f_spherical at n = 3 agrees with the propagation path") {
  MinimalTypeParamsC p{{0.2, 0.0, -0.2}, 0};
  TorusPointC a{{1.0, 1.0}};
  Estimate mb = f_spherical(p.spherical(), a);
  Estimate direct = whittaker_c_direct(p, {{0, 0, 0}}, a);
  CHECK(rel(mb.value, direct.value / kPropagationScale) < 1e-5);
}

TEST_CASE("f_spherical at n = 3 is Weyl invariant") {
  TorusPointC a{{1.0, 1.0}};
  for (const auto& nu : {std::vector<cplx>{0.2, 0.0, -0.2}, std::vector<cplx>{cplx(0.0, 0.3), 0.1, cplx(-0.1, -0.3)},
                         std::vector<cplx>{0.4, cplx(0.0, 0.5), cplx(-0.4, -0.5)}}) {
    const cplx ref = f_spherical({nu}, a).value;
    std::vector<int> perm{0, 1, 2};
    while (std::next_permutation(perm.begin(), perm.end())) {
      std::vector<cplx> q{nu[perm[0]], nu[perm[1]], nu[perm[2]]};
      CHECK(rel(f_spherical({q}, a).value, ref) < 1e-5);
    }
  }
}

TEST_CASE("f_spherical at n = 4 is Weyl invariant") {
  // Five contour variables: a coarse grid keeps this to about a minute per value.
  ArchOptions o;
  o.tol = 1e-4;
  o.mb_height = 6.0;
  o.mb_step = 0.3;
  TorusPointC a{{1.0, 1.0, 1.0}};
  const cplx ref = f_spherical({{0.3, 0.1, -0.1, -0.3}}, a, o).value;
  CHECK(ref.real() > 0.0);
  CHECK(std::abs(ref.imag()) < 1e-6 * std::abs(ref));
  CHECK(rel(f_spherical({{-0.1, 0.3, -0.3, 0.1}}, a, o).value, ref) < 1e-4);
}

TEST_CASE("minimal K-type: n = 2 contour formula against the propagation integral") {
  MinimalTypeParamsC p{{0.3, cplx(0.0, -0.1)}, 1};
  ArchOptions o;
  o.tol = 1e-10;
  for (const auto& ell : WeightIndexC::all(2, 1)) {
    Estimate mb = whittaker_c_mb(p, ell, {{1.0}}, o);
    Estimate direct = whittaker_c_direct(p, ell, {{1.0}}, o);
    CHECK(rel(mb.value, direct.value) < 1e-8);
  }
}

TEST_CASE("minimal K-type: kappa = 0 at n = 2 reduces to the spherical function") {
  MinimalTypeParamsC p{{0.3, cplx(0.0, -0.1)}, 0};
  for (double a : {0.5, 1.0}) {
    Estimate direct = whittaker_c_direct(p, {{0, 0}}, {{a}});
    CHECK(rel(direct.value / kPropagationScale, f_spherical(p.spherical(), {{a}}).value) < 1e-10);
  }
}

TEST_CASE("minimal K-type: n = 3 contour formula against the propagation integral") {
  MinimalTypeParamsC p{{0.2, 0.0, -0.2}, 2};
  ArchOptions o;
  o.tol = 1e-7;
  Estimate mb = whittaker_c_mb(p, {{0, 0, 2}}, {{1.0, 1.0}}, o);
  Estimate direct = whittaker_c_direct(p, {{0, 0, 2}}, {{1.0, 1.0}}, o);
  CHECK(rel(mb.value, direct.value) < 1e-5);
}

TEST_CASE("Miyazaki formula agrees with the Hermite integral") {
  ArchOptions o;
  o.tol = 1e-9;
  MonomialValues mb = miyazaki_mb({2, 0.0}, 1.0, 1.0, o);
  MonomialValues direct = miyazaki_direct({2, 0.0}, 1.0, 1.0, o);
  CHECK(mb.size() == 6);
  for (const auto& [m, e] : mb) CHECK(rel(e.value, direct.at(m).value) < 1e-6);

  MonomialValues mb3 = miyazaki_mb({3, cplx(0.3, 0.1)}, 0.5, 1.5, o);
  MonomialValues direct3 = miyazaki_direct({3, cplx(0.3, 0.1)}, 0.5, 1.5, o);
  CHECK(mb3.size() == 10);
  for (const auto& [m, e] : mb3) CHECK(rel(e.value, direct3.at(m).value) < 1e-6);
}

TEST_CASE("Miyazaki coefficients under n1 <-> n3 for real w") {
  MonomialValues v = miyazaki_mb({3, 0.0}, 1.0, 1.0);
  for (const auto& [m, e] : v) {
    Monomial r{m[2], m[1], m[0]};
    CHECK(std::abs(e.value) == doctest::Approx(std::abs(v.at(r).value)).epsilon(1e-7));
    // the ratio is the power of sqrt(-1) in front
    cplx ip = std::pow(cplx(0.0, 1.0), double(m[0] - m[2]));
    cplx ipr = std::pow(cplx(0.0, 1.0), double(m[2] - m[0]));
    CHECK(rel(e.value / ip, v.at(r).value / ipr) < 1e-7);
  }
}

TEST_CASE("Miyazaki integral is real for w = 0 and n1 = n3") {
  for (const Monomial& m : {Monomial{1, 0, 1}, Monomial{0, 2, 0}, Monomial{1, 1, 1}}) {
    const int kappa = m[0] + m[1] + m[2];
    Estimate e = miyazaki_integral({kappa, 0.0}, m, 0.8, 1.2);
    CHECK(e.value.imag() == 0.0);
    CHECK(e.value.real() != 0.0);
  }
}

TEST_CASE("Miyazaki integral Mellin transform at (2, 2)") {
  // Trapezoid over (log a1, log a2) of a1^2 a2^2 I(a1, a2).
  const MiyazakiParams p{2, 0.0};
  const Monomial m{1, 0, 1};
  const double h = 0.3;
  cplx sum = 0.0;
  for (double u1 = -10.0; u1 <= 3.0; u1 += h) {
    for (double u2 = -10.0; u2 <= 3.0; u2 += h) {
      sum += std::exp(2.0 * (u1 + u2)) * miyazaki_integral(p, m, std::exp(u1), std::exp(u2), 1e-9).value;
    }
  }
  CHECK(rel(h * h * sum, miyazaki_integral_mellin(p, m, 2.0, 2.0)) < 1e-6);
}

TEST_CASE("Miyazaki parameters") {
  CHECK_THROWS_AS(miyazaki_mb({1, 0.0}, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(miyazaki_integrand({2, 0.0}, {1, 1, 1}, 1.0, 1.0), InvalidArgument);
  CHECK_THROWS_AS(miyazaki_mb({2, 0.0}, -1.0, 1.0), DomainError);
}

TEST_CASE("lemma closed forms") {
  // Gaussian integral with the measure 2 dx dy on C
  CHECK(rel(ft2_closed_form(0, 0.5), std::exp(-pi / 2)) < 1e-15);
  CHECK(rel(ft2_quadrature(0, 0.5), std::exp(-pi / 2)) < 1e-10);
  CHECK(rel(ft1_quadrature(0, 0, 1.0, 1.0, 1.0), ft1_closed_form(0, 0, 1.0, 1.0, 1.0)) < 1e-8);
  CHECK(rel(ft1_quadrature(2, 1, 1.0, 1.0, 1.0), ft1_closed_form(2, 1, 1.0, 1.0, 1.0)) < 1e-8);
  CHECK(rel(mellin1_part1_lhs(2, 0.7, 0.4, 3.5), mellin1_part1_rhs(2, 0.7, 0.4, 3.5)) < 1e-8);
  CHECK(rel(mellin1_part2_quadrature(cplx(0.6, 0.2), 0.5), mellin1_part2_closed_form(cplx(0.6, 0.2), 0.5)) <
        1e-8);
  WeightIndexC ell{{1, 1}};
  CHECK(rel(ft3_quadrature(2, ell, 0.9, 1.1, 0.8), ft3_closed_form(2, ell, 0.9, 1.1, 0.8)) < 1e-8);
}

TEST_CASE("lemma checks stay within 1e-7") {
  LemmaReport r = lemma_checks();
  CHECK(r.max_rel_err.size() == 5);
  for (const auto& [lemma, err] : r.max_rel_err) {
    CAPTURE(lemma);
    CHECK(err <= 1e-7);
  }
  CHECK(r.cases.size() > 30);
}

TEST_CASE("Ishii-Stade self-consistency") {
  ArchOptions o;
  o.tol = 1e-10;
  ConsistencyResult r = ishii_stade_consistency({0.3, -0.3}, 2.0, 1.0, o);
  CHECK(rel(r.lhs, 0.00737723732312599509937485950799) < 1e-13);
  CHECK(rel(r.rhs.value, r.lhs) < 1e-7);

  ConsistencyResult r2 = ishii_stade_consistency({0.3, -0.3}, 2.0, 1.7, o);
  CHECK(rel(r2.rhs.value, r.rhs.value) < 1e-7);

  ConsistencyResult s = ishii_stade_consistency({-0.3, 0.3}, 2.0, 1.0, o);
  CHECK(rel(s.lhs, r.lhs) < 1e-14);
  CHECK(rel(s.rhs.value, r.rhs.value) < 1e-9);

  CHECK_THROWS_AS(ishii_stade_consistency({0.3, -0.3}, 0.1, 1.0, o), DomainError);
  CHECK_THROWS_AS(ishii_stade_consistency({0.3, -0.3}, 1.0, 0.2, o), InfeasibleContour);
}
