#include <benchmark/benchmark.h>

#include "poslab/pathsim.hpp"
#include "poslab/sampler.hpp"
#include "poslab/transmaps.hpp"

using namespace poslab;

static void BM_GammaDraw(benchmark::State& state) {
  const double shape = static_cast<double>(state.range(0)) / 4.0;
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(gamma_draw(rng, shape));
}
BENCHMARK(BM_GammaDraw)->Arg(1)->Arg(4)->Arg(12);

static void BM_LogGammaDrawSmallShape(benchmark::State& state) {
  RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(log_gamma_draw(rng, 0.01));
}
BENCHMARK(BM_LogGammaDrawSmallShape);

static void BM_EvalFloat(benchmark::State& state) {
  const auto type = static_cast<RootType>(state.range(0));
  const auto map = builtin_map(type);
  std::vector<double> t(map.arity(), 1.3);
  for (auto _ : state) benchmark::DoNotOptimize(eval_float(map, t));
  state.SetLabel(to_string(type));
}
BENCHMARK(BM_EvalFloat)
    ->Arg(static_cast<int>(RootType::A2))
    ->Arg(static_cast<int>(RootType::B2))
    ->Arg(static_cast<int>(RootType::C2))
    ->Arg(static_cast<int>(RootType::G2));

static void BM_EvalRationalG2(benchmark::State& state) {
  const auto map = builtin_map(RootType::G2);
  std::vector<mpq_class> t{mpq_class(3, 2), 2, mpq_class(5, 7), 1, mpq_class(2, 3), 4};
  for (auto _ : state) benchmark::DoNotOptimize(eval_rational(map, t));
}
BENCHMARK(BM_EvalRationalG2);

static void BM_BrownianPathA2(benchmark::State& state) {
  const auto rs = build_root_system(RootType::A2);
  const auto drift = drift_from_chamber_coords(rs, {1.0, 1.0});
  RngStream rng(1, 0);
  const double T = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sample_brownian_path(rng, rs, drift, {0, 0, 0}, T, 1e-3));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(T * 1000));
}
BENCHMARK(BM_BrownianPathA2)->Arg(1)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_NMatrixA2(benchmark::State& state) {
  const auto rs = build_root_system(RootType::A2);
  const auto drift = drift_from_chamber_coords(rs, {1.0, 1.0});
  RngStream rng(1, 0);
  const auto path = sample_brownian_path(rng, rs, drift, {0, 0, 0}, 20.0, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(n_matrix(path, rs));
}
BENCHMARK(BM_NMatrixA2)->Unit(benchmark::kMillisecond);

static void BM_PathTransform121(benchmark::State& state) {
  const auto rs = build_root_system(RootType::A2);
  const auto drift = drift_from_chamber_coords(rs, {1.0, 1.0});
  RngStream rng(1, 0);
  const auto path = sample_brownian_path(rng, rs, drift, {0, 0, 0}, 25.0, 1e-3);
  for (auto _ : state) benchmark::DoNotOptimize(path_transform_word(path, rs, {1, 2, 1}, {1.0, 2.0, 0.5}));
}
BENCHMARK(BM_PathTransform121)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
