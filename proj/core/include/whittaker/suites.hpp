#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "whittaker/arch_whittaker.hpp"
#include "whittaker/mb_engine.hpp"

namespace whittaker {

// One checked identity. `error` is a relative error (0/1 for exact checks).
struct SuiteRow {
  std::string suite;
  std::string label;
  double error = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string detail;
};

struct SuiteConfig {
  ArchOptions arch;          // arch.tol is the comparison tolerance where a suite has no fixed one
  int cases = 20;            // random tuples for barnes
  int asai_n = 2;            // rank for the asai suite
  std::uint64_t seed = 20240611;
};

struct SuiteReport {
  std::string name;
  std::vector<SuiteRow> rows;
  double seconds = 0.0;

  bool pass() const;
  double max_error() const;
};

// gamma, barnes, shintani, lemmas, gl3r, glnc, ishii-stade, asai, engine.
const std::vector<std::string>& suite_names();

// Runs one suite, or every suite for "all". Numerical failures inside a case
// become failed rows carrying the error kind in `detail`.
std::vector<SuiteReport> run_suite(const std::string& name, const SuiteConfig& cfg = {});

struct CorpusEntry {
  std::string name;
  MBIntegrand integrand;
};

// Integrands shared by the engine property checks and the benchmarks.
std::vector<CorpusEntry> integrand_corpus();

}  // namespace whittaker
