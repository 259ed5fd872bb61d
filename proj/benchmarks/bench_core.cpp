// Microbenchmarks for the hot paths: series evaluation, zero scans, the
// dense eigensolvers behind the oracle, and the coupling-matrix build.
// Build with -DTPRABI_BUILD_BENCHMARKS=ON (default when google-benchmark is
// installed); run ./benchmarks/bench_core --benchmark_min_time=0.5s or so.
#include <benchmark/benchmark.h>

#include <random>

#include "tprabi/gfunc.hpp"
#include "tprabi/linalg.hpp"
#include "tprabi/melem.hpp"
#include "tprabi/model.hpp"
#include "tprabi/oracle.hpp"
#include "tprabi/variational.hpp"

using namespace tprabi;

static void BM_GEval(benchmark::State& state) {
  const ModelParams p(1.0, 0.3);
  const Sector sector{Bargmann::quarter, Parity::plus};
  double e = 0.9;
  for (auto _ : state) {
    auto gv = gfunc::g_eval(p, sector, e);
    benchmark::DoNotOptimize(gv.value);
  }
}
BENCHMARK(BM_GEval);

static void BM_GEvalNearCollapse(benchmark::State& state) {
  // slowest regime: term ratio 1/(1+beta) close to 1
  const ModelParams p(1.0, 0.49);
  const Sector sector{Bargmann::quarter, Parity::minus};
  for (auto _ : state) {
    auto gv = gfunc::g_eval(p, sector, -0.35);
    benchmark::DoNotOptimize(gv.value);
  }
}
BENCHMARK(BM_GEvalNearCollapse);

static void BM_FindZeros(benchmark::State& state) {
  const ModelParams p(1.0, 0.25);
  const Sector sector{Bargmann::quarter, Parity::plus};
  for (auto _ : state) {
    auto scan = gfunc::find_zeros_in_interval(p, sector, -2.0, 6.0);
    benchmark::DoNotOptimize(scan.zeros.size());
  }
}
BENCHMARK(BM_FindZeros);

static void BM_Jacobi(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  linalg::DenseMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  for (auto _ : state) {
    auto eig = linalg::jacobi_symmetric_eigen(a, false);
    benchmark::DoNotOptimize(eig.values.front());
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Jacobi)->Arg(50)->Arg(100)->Arg(200)->Complexity();

static void BM_QrEigen(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  linalg::DenseMatrix a(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = u(rng);
  for (auto _ : state) {
    auto ev = linalg::qr_nonsymmetric_eigen(a);
    benchmark::DoNotOptimize(ev.front());
  }
}
BENCHMARK(BM_QrEigen)->Arg(20)->Arg(50);

static void BM_OracleSpectrum(benchmark::State& state) {
  const int cutoff = static_cast<int>(state.range(0));
  const ModelParams p(1.0, 0.45);
  for (auto _ : state) {
    auto ham = oracle::build_hamiltonian(p, Bargmann::quarter, cutoff);
    auto levels = oracle::eigen_spectrum(ham, 8);
    benchmark::DoNotOptimize(levels.front().energy);
  }
}
BENCHMARK(BM_OracleSpectrum)->Arg(100)->Arg(200);

static void BM_DMatrixBuild(benchmark::State& state) {
  const ModelParams p(1.0, 0.4);
  for (auto _ : state) {
    auto dm = melem::build_dmatrix(p, Bargmann::quarter, 40);
    benchmark::DoNotOptimize(dm.d(39, 39));
  }
}
BENCHMARK(BM_DMatrixBuild);

static void BM_Variational(benchmark::State& state) {
  const ModelParams p(1.0, 0.45);
  for (auto _ : state) {
    auto r = variational::minimize_variational(p);
    benchmark::DoNotOptimize(r.energy);
  }
}
BENCHMARK(BM_Variational);

// the packaged libbenchmark_main.a ships stale LTO bytecode on this image;
// supplying main() here lets us link the (fine) shared library only
BENCHMARK_MAIN();
