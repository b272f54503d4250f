#include <doctest.h>

#include <algorithm>

#include "whittaker/errors.hpp"
#include "whittaker/suites.hpp"

using namespace whittaker;

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  CHECK(names.size() == 9);
  CHECK(std::find(names.begin(), names.end(), "asai") != names.end());
  CHECK_THROWS_AS(run_suite("nope"), InvalidArgument);
}

TEST_CASE("fast suites pass") {
  for (const char* name : {"gamma", "shintani", "ishii-stade"}) {
    auto reps = run_suite(name);
    REQUIRE(reps.size() == 1);
    CAPTURE(name);
    CHECK(reps[0].name == name);
    CHECK(!reps[0].rows.empty());
    CHECK(reps[0].pass());
  }
}

TEST_CASE("an unreachable tolerance fails rows instead of throwing") {
  SuiteConfig cfg;
  cfg.cases = 2;
  cfg.arch.tol = 1e-20;
  auto reps = run_suite("barnes", cfg);
  REQUIRE(reps.size() == 1);
  CHECK_FALSE(reps[0].pass());
  CHECK(reps[0].rows.size() == 2);
}

TEST_CASE("corpus integrands are distinct and named") {
  auto corpus = integrand_corpus();
  CHECK(corpus.size() >= 7);
  for (const auto& e : corpus) CHECK(!e.name.empty());
}
