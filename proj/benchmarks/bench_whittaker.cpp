#include <benchmark/benchmark.h>

#include <random>

#include "whittaker/arch_whittaker.hpp"
#include "whittaker/asai_zeta.hpp"
#include "whittaker/mb_engine.hpp"
#include "whittaker/padic_whittaker.hpp"
#include "whittaker/suites.hpp"

using namespace whittaker;

namespace {

void BM_LogGamma(benchmark::State& state) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> re(0.1, 30.0), im(-40.0, 40.0);
  std::vector<cplx> pts(1024);
  for (auto& z : pts) z = {re(rng), im(rng)};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(log_gamma(pts[i++ & 1023]));
  }
}
BENCHMARK(BM_LogGamma);

void BM_BesselK(benchmark::State& state) {
  const double x = double(state.range(0)) / 10.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bessel_k(cplx(0.3, 0.2), x));
  }
}
BENCHMARK(BM_BesselK)->Arg(1)->Arg(10)->Arg(126);

void BM_SchurBranching(benchmark::State& state) {
  const int n = int(state.range(0));
  std::vector<long> lam(n);
  for (int i = 0; i < n; ++i) lam[i] = 2 * (n - i);
  std::vector<GaussianRational> a;
  for (int i = 0; i < n; ++i) a.push_back(GaussianRational(mpq_class(i + 2, 3)));
  const DominantWeight w(lam);
  const SatakeParams alpha(a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(schur_branching(w, alpha));
  }
}
BENCHMARK(BM_SchurBranching)->DenseRange(2, 5);

void BM_SchurBialternant(benchmark::State& state) {
  const int n = int(state.range(0));
  std::vector<long> lam(n);
  for (int i = 0; i < n; ++i) lam[i] = 2 * (n - i);
  std::vector<GaussianRational> a;
  for (int i = 0; i < n; ++i) a.push_back(GaussianRational(mpq_class(i + 2, 3)));
  const DominantWeight w(lam);
  const SatakeParams alpha(a);
  for (auto _ : state) {
    benchmark::DoNotOptimize(schur_bialternant(w, alpha));
  }
}
BENCHMARK(BM_SchurBialternant)->DenseRange(2, 5);

// One benchmark per corpus integrand, at the engine suite's settings.
void BM_EvalMB(benchmark::State& state, const MBIntegrand& f) {
  const ContourSpec c = optimize_contour(f, 0.1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(eval_mb(f, c, {1e-9}));
  }
}

void BM_FSpherical(benchmark::State& state) {
  const int n = int(state.range(0));
  SphericalParamsC p;
  TorusPointC a;
  for (int i = 0; i < n; ++i) p.nu.push_back(0.1 * (n - 1 - 2 * i));
  a.a.assign(n - 1, 1.0);
  ArchOptions o;
  o.tol = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(f_spherical(p, a, o));
  }
}
BENCHMARK(BM_FSpherical)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_MinimalTypeMB(benchmark::State& state) {
  const MinimalTypeParamsC p{{0.2, 0.0, -0.2}, 2};
  ArchOptions o;
  o.tol = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(whittaker_c_mb(p, {{0, 0, 2}}, {{1.0, 1.0}}, o));
  }
}
BENCHMARK(BM_MinimalTypeMB)->Unit(benchmark::kMillisecond);

void BM_MinimalTypeDirect(benchmark::State& state) {
  const MinimalTypeParamsC p{{0.2, 0.0, -0.2}, 2};
  ArchOptions o;
  o.tol = 1e-6;
  for (auto _ : state) {
    benchmark::DoNotOptimize(whittaker_c_direct(p, {{0, 0, 2}}, {{1.0, 1.0}}, o));
  }
}
BENCHMARK(BM_MinimalTypeDirect)->Unit(benchmark::kMillisecond);

void BM_AsaiLhs(benchmark::State& state) {
  const int n = int(state.range(0));
  AsaiInput in{n, std::vector<cplx>(n, 0.0), 1, 1.5};
  const double tol = n == 2 ? 1e-8 : 1e-3;
  for (auto _ : state) {
    benchmark::DoNotOptimize(asai_lhs_mellin(in, tol));
  }
}
BENCHMARK(BM_AsaiLhs)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

}  // namespace

int main(int argc, char** argv) {
  static const std::vector<CorpusEntry> corpus = integrand_corpus();
  for (const auto& e : corpus) {
    benchmark::RegisterBenchmark(("BM_EvalMB/" + e.name).c_str(), BM_EvalMB, e.integrand)
        ->Unit(benchmark::kMillisecond);
  }
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
