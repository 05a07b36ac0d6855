#include <benchmark/benchmark.h>

#include "subw/bnn.hpp"
#include "subw/concentration.hpp"
#include "subw/rng.hpp"
#include "subw/sampling.hpp"
#include "subw/tail_estimation.hpp"

namespace {

void BM_probit(benchmark::State& state) {
  subw::CounterRng rng({42, 0, 0});
  for (auto _ : state) benchmark::DoNotOptimize(subw::probit(rng.next_open()));
}
BENCHMARK(BM_probit);

void BM_sample_weibull(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  const subw::TailParams p = subw::TailParams::from_lambda(1.0, 1.0);
  for (auto _ : state)
    benchmark::DoNotOptimize(subw::sample_weibull(n, p, {42, 0, 0}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_sample_weibull)->Arg(1 << 10)->Arg(1 << 16);

void BM_sample_gaussian(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(subw::sample_gaussian(n, 0.0, 1.0, {42, 0, 0}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_sample_gaussian)->Arg(1 << 10)->Arg(1 << 16);

void BM_estimate_theta(benchmark::State& state) {
  const std::size_t n = static_cast<std::size_t>(state.range(0));
  auto s = subw::sample_weibull(n, subw::TailParams::from_lambda(1.0, 1.0), {7, 0, 0});
  const std::size_t k = n / 100;
  for (auto _ : state)
    benchmark::DoNotOptimize(subw::estimate_theta(s.values, k));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(n));
}
BENCHMARK(BM_estimate_theta)->Arg(1 << 14)->Arg(1 << 17);

void BM_calibrate_K4(benchmark::State& state) {
  auto s = subw::sample_weibull(1 << 14, subw::TailParams::from_lambda(1.0, 1.0),
                                {7, 0, 0});
  for (auto _ : state)
    benchmark::DoNotOptimize(subw::calibrate_K4(s.values, 1.0));
}
BENCHMARK(BM_calibrate_K4);

void BM_bnn_width1_draws(benchmark::State& state) {
  subw::MlpConfig cfg;
  cfg.input_dim = 1000;
  cfg.widths = {1, 1, 1};
  cfg.weight_std = 1.4142135623730951;
  auto input = subw::sample_gaussian(cfg.input_dim, 0.0, 1.0, {1001, 0, 0});
  const std::size_t draws = static_cast<std::size_t>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(
        subw::sample_unit_prior(cfg, input.values, draws, 0, {1, 0, 0}));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(draws));
}
BENCHMARK(BM_bnn_width1_draws)->Arg(100)->Arg(1000);

}  // namespace

BENCHMARK_MAIN();
