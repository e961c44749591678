#include <benchmark/benchmark.h>

#include <cmath>

#include "kgo/model.hpp"
#include "kgo/oracle.hpp"
#include "kgo/specfun.hpp"
#include "kgo/spectrum.hpp"
#include "kgo/wavefn.hpp"

namespace {

using namespace kgo;

void BM_Gauss2F1Poly(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(specfun::gauss2f1_poly(n, 4.7, 2.1, 0.63));
  }
}
BENCHMARK(BM_Gauss2F1Poly)->Arg(4)->Arg(16)->Arg(48);

void BM_PtOperatorBuild(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const spectrum::PTParams pt = spectrum::pt_parameters(0.3, 1);
  const double alpha = std::sqrt(0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::build_pt_operator(pt, alpha, oracle::pt_grid(alpha, points)));
  }
}
BENCHMARK(BM_PtOperatorBuild)->Arg(1024)->Arg(4096);

void BM_EigenLowest(benchmark::State& state) {
  const int points = static_cast<int>(state.range(0));
  const spectrum::PTParams pt = spectrum::pt_parameters(0.3, 1);
  const double alpha = std::sqrt(0.3);
  const auto op = oracle::build_pt_operator(pt, alpha, oracle::pt_grid(alpha, points));
  for (auto _ : state) {
    benchmark::DoNotOptimize(oracle::eigen_lowest(op, 4));
  }
}
BENCHMARK(BM_EigenLowest)->Arg(1024)->Arg(4096)->Arg(16384);

void BM_VerifyLattice(benchmark::State& state) {
  const ModelParams params = params_from_dimensionless(0.2, 0.3);
  oracle::VerifyOptions options;
  options.points_pt = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        oracle::verify_spectrum(params, 3, 3, Mode::Gup, Zeta2Variant::Eq60, options));
  }
}
BENCHMARK(BM_VerifyLattice)->Arg(1024)->Arg(2048);

void BM_NormalizeGup(benchmark::State& state) {
  const ModelParams params = make_params(1, 1, 1, 1, 0.3);
  const wavefn::ProfileSpec spec{QuantumNumbers{2, 1, 5}, params, Mode::Gup};
  for (auto _ : state) {
    benchmark::DoNotOptimize(wavefn::normalize(spec));
  }
}
BENCHMARK(BM_NormalizeGup);

void BM_SpectrumTable(benchmark::State& state) {
  const ModelParams params = params_from_dimensionless(0.2, 0.3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        spectrum::spectrum_table(params, 8, 8, Mode::Gup));
  }
}
BENCHMARK(BM_SpectrumTable);

}  // namespace

BENCHMARK_MAIN();
