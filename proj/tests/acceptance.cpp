// Runs the nine acceptance criteria and prints one line per criterion.
// Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <string>
#include <thread>
#include <vector>

#include "whittaker/errors.hpp"
#include "whittaker/suites.hpp"

using namespace whittaker;

namespace {

struct Criterion {
  int id;
  std::string title;
  double time_limit;  // seconds
  std::vector<std::pair<std::string, SuiteConfig>> suites;
};

struct Outcome {
  bool pass = true;
  double max_error = 0.0;
  double seconds = 0.0;
  int rows = 0;
  std::vector<std::string> failures;
};

Outcome run(const Criterion& c) {
  Outcome out;
  for (const auto& [name, cfg] : c.suites) {
    try {
      for (const auto& rep : run_suite(name, cfg)) {
        out.seconds += rep.seconds;
        out.max_error = std::max(out.max_error, rep.max_error());
        out.rows += int(rep.rows.size());
        for (const auto& r : rep.rows) {
          if (!r.pass) out.failures.push_back(r.suite + ": " + r.label + " " + r.detail);
        }
        out.pass = out.pass && rep.pass() && !rep.rows.empty();
      }
    } catch (const Error& e) {
      out.pass = false;
      out.failures.push_back(name + ": " + e.kind() + " " + e.what());
    }
  }
  if (out.seconds > c.time_limit) {
    out.pass = false;
    out.failures.push_back("runtime " + std::to_string(out.seconds) + " s over the limit");
  }
  return out;
}

SuiteConfig with_tol(double tol, int threads) {
  SuiteConfig cfg;
  cfg.arch.tol = tol;
  cfg.arch.threads = threads;
  return cfg;
}

}  // namespace

int main() {
  const int threads = int(std::max(1u, std::thread::hardware_concurrency()));

  SuiteConfig barnes = with_tol(1e-8, threads);
  barnes.cases = 20;
  SuiteConfig asai2 = with_tol(1e-8, threads);
  asai2.asai_n = 2;
  SuiteConfig asai3 = with_tol(1e-3, threads);
  asai3.asai_n = 3;

  const std::vector<Criterion> criteria = {
      {1, "gamma recurrence and duplication, 1e-12 on 1000 points", 1.0,
       {{"gamma", with_tol(1e-12, 1)}}},
      {2, "Barnes first lemma, 1e-8 on 20 random tuples", 30.0, {{"barnes", barnes}}},
      {3, "Shintani branching and recursion, exact", 60.0, {{"shintani", with_tol(0.0, 1)}}},
      {4, "lemma quadratures, 1e-7", 300.0, {{"lemmas", with_tol(1e-7, threads)}}},
      {5, "GL(3,R) Miyazaki MB vs direct, 1e-6 per monomial", 600.0,
       {{"gl3r", with_tol(1e-6, threads)}}},
      {6, "GL(n,C) MB vs propagation path, 1e-8 (n=2) and 1e-5 (n=3)", 1800.0,
       {{"glnc", with_tol(1e-5, threads)}}},
      {7, "Ishii-Stade self-consistency and sigma independence, 1e-7", 120.0,
       {{"ishii-stade", with_tol(1e-7, threads)}}},
      {8, "Asai identity, n=2 at 1e-8 and n=3 at 1e-3", 1800.0,
       {{"asai", asai2}, {"asai", asai3}}},
      {9, "engine contour shift 1e-9 and thread determinism", 1800.0,
       {{"engine", with_tol(1e-9, threads)}}},
  };

  int failed = 0;
  for (const auto& c : criteria) {
    const Outcome o = run(c);
    std::printf("[%s] %d %s: %d rows, max err %.3g, %.2f s (limit %.0f s)\n",
                o.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), o.rows, o.max_error, o.seconds,
                c.time_limit);
    for (const auto& f : o.failures) std::printf("       %s\n", f.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
