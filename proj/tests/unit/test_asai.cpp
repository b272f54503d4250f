#include <doctest.h>

#include <cmath>
#include <numbers>

#include "whittaker/asai_zeta.hpp"
#include "whittaker/errors.hpp"

using namespace whittaker;
using std::numbers::pi;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

int count(const LFactor& l, AsaiGammaKind k) {
  int c = 0;
  for (const auto& t : l.gamma_terms) c += t.kind == k;
  return c;
}

}  // namespace

TEST_CASE("L-factor examples") {
  const cplx s(1.3, 0.4);
  LFactor l0 = asai_l_factor({2, {0.0, 0.0}, 0, s});
  cplx want0 = (gamma_R(s) * gamma_R(s) * gamma_C(s)).value();
  CHECK(rel(l0.evaluate(s).value(), want0) < 1e-13);

  LFactor l1 = asai_l_factor({2, {0.0, 0.0}, 1, s});
  cplx want1 = (gamma_R(s + 1.0) * gamma_R(s) * gamma_C(s + 0.5)).value();
  CHECK(rel(l1.evaluate(s).value(), want1) < 1e-13);

  const cplx nu1(0.2, -0.1);
  LFactor lone = asai_l_factor({1, {nu1}, 0, s});
  REQUIRE(lone.gamma_terms.size() == 1);
  CHECK(rel(lone.evaluate(s).value(), gamma_R(s + 2.0 * nu1).value()) < 1e-13);
}

TEST_CASE("L-factor degree count") {
  for (int n = 1; n <= 4; ++n) {
    for (int kappa = 0; kappa <= 3; ++kappa) {
      LFactor l = asai_l_factor({n, std::vector<cplx>(n, 0.1), kappa, 1.0});
      CHECK(count(l, AsaiGammaKind::R) == n);
      CHECK(count(l, AsaiGammaKind::C) == n * (n - 1) / 2);
    }
  }
}

TEST_CASE("twisting nu by a real constant shifts every Gamma argument by 2c") {
  const double c = 0.35;
  AsaiInput in{3, {cplx(0.1, 0.2), 0.0, cplx(-0.1, 0.4)}, 2, 1.0};
  AsaiInput tw = in;
  for (auto& v : tw.nu) v += c;
  LFactor a = asai_l_factor(in), b = asai_l_factor(tw);
  REQUIRE(a.gamma_terms.size() == b.gamma_terms.size());
  for (std::size_t i = 0; i < a.gamma_terms.size(); ++i) {
    CHECK(a.gamma_terms[i].kind == b.gamma_terms[i].kind);
    CHECK(a.gamma_terms[i].slope == b.gamma_terms[i].slope);
    CHECK(std::abs(b.gamma_terms[i].constant - a.gamma_terms[i].constant - 2.0 * c) < 1e-15);
  }
}

TEST_CASE("right-hand side") {
  // kappa = 0: the Gamma_R ratio is 1
  for (int n : {2, 3}) {
    AsaiInput in{n, std::vector<cplx>(n, 0.0), 0, 1.7};
    cplx l = asai_l_factor(in).evaluate(in.s).value();
    CHECK(rel(asai_rhs(in), std::pow(2.0, n * (n - 2)) * l) < 1e-13);
  }
  // Gamma_R(3) Gamma_R(1) Gamma_C(2) = 1 / (4 pi^3)
  CHECK(rel(asai_rhs({2, {0.0, 0.0}, 2, 1.0}), 0.00806288360829987229610551317214) < 1e-13);
}

TEST_CASE("right-hand side at a pole raises PoleError") {
  // Gamma_R(s + 2 nu_1 + kappa) has a pole at s = -2 nu_1 - kappa
  AsaiInput in{2, {0.1, -0.1}, 2, -2.0 * 0.1 - 2.0 + 1e-14};
  CHECK_THROWS_AS(asai_rhs(in), PoleError);
}

TEST_CASE("left-hand side examples at n = 2") {
  AsaiInput a{2, {0.0, 0.0}, 0, 1.5};
  CHECK(rel(asai_lhs_mellin(a).value, asai_rhs(a)) < 1e-8);
  AsaiInput b{2, {0.2, -0.2}, 2, 1.2};
  CHECK(rel(asai_lhs_mellin(b).value, asai_rhs(b)) < 1e-8);
}

TEST_CASE("s sweep at n = 2, kappa = 1") {
  for (double s : {1.2, 1.5, 2.0}) {
    AsaiReport r = verify_asai({2, {cplx(0.0, 0.1), cplx(0.0, -0.1)}, 1, s}, 1e-8);
    CAPTURE(s);
    CHECK(r.pass);
    CHECK(r.rel_err < 1e-8);
  }
}

TEST_CASE("left-hand side at n = 3") {
  AsaiReport r0 = verify_asai({3, {0.2, 0.0, -0.2}, 0, 1.5}, 1e-3);
  CHECK(r0.pass);
  AsaiReport r1 = verify_asai({3, {0.1, 0.0, -0.1}, 1, 1.3}, 1e-3);
  CHECK(std::isfinite(std::abs(r1.rhs)));
  CHECK(r1.pass);
}

TEST_CASE("rank limits") {
  CHECK_THROWS_AS(asai_lhs_mellin({4, std::vector<cplx>(4, 0.0), 0, 2.0}), UnsupportedRank);
  CHECK_THROWS_AS(asai_rhs({2, {0.0}, 0, 2.0}), LengthMismatch);
}
