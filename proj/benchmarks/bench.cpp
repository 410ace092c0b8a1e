#include <benchmark/benchmark.h>

#include <vector>

#include "airsum/channel.hpp"
#include "airsum/codec.hpp"
#include "airsum/sim.hpp"
#include "airsum/theory.hpp"

namespace {

using namespace airsum;

SystemConfig bench_config(int K, int M) {
  SystemConfig cfg;
  cfg.K = K;
  cfg.alphabets.assign(K, AlphabetSpec{2, {}, 0, 1});
  int L = output_alphabet_size(cfg.alphabets);
  cfg.plan = make_fixed_guard_plan(L, M, 1);
  cfg.snr = 1e6;
  cfg.master_seed = 7;
  cfg.trials = 10000;
  return cfg;
}

void BM_encode_row(benchmark::State& state) {
  auto K = static_cast<int>(state.range(0));
  auto M = static_cast<int>(state.range(1));
  SystemConfig cfg = bench_config(K, M);
  int L = output_alphabet_size(cfg.alphabets);
  EncoderContext enc(cfg.plan, K, L);
  SourceBlock block{K, M, std::vector<int>(K * M, 0)};
  TrialRng rng = derive_trial_rng(1, 0);
  for (auto& s : block.symbols) s = sample_symbol(2, rng);
  for (auto _ : state) {
    for (int k = 0; k < K; ++k) {
      benchmark::DoNotOptimize(encode_block_row(enc, block, k));
    }
  }
  state.SetItemsProcessed(state.iterations() * K);
}
BENCHMARK(BM_encode_row)->Args({2, 4})->Args({8, 6})->Args({4, 16});

void BM_decode_digits(benchmark::State& state) {
  auto K = static_cast<int>(state.range(0));
  auto M = static_cast<int>(state.range(1));
  SystemConfig cfg = bench_config(K, M);
  int L = output_alphabet_size(cfg.alphabets);
  EncoderContext enc(cfg.plan, K, L);
  SourceBlock block{K, M, std::vector<int>(K * M, 1)};
  auto stats = block_statistics(cfg.plan, cfg.alphabets);
  GridReal gamma_bar{BigInt(0)};
  std::vector<GridReal> x;
  for (int k = 0; k < K; ++k) {
    GridReal g = grid_from_double(stats.gamma[k], enc.scale);
    gamma_bar = gamma_bar + g;
    x.push_back(modulate(encode_block_row(enc, block, k), g, enc.scale));
  }
  TrialRng rng = derive_trial_rng(1, 1);
  GridReal y = transmit(x, grid_from_double(sample_gaussian(rng) * 1e-3, enc.scale));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decode_digits(y, gamma_bar, enc.scale, cfg.plan, L));
  }
}
BENCHMARK(BM_decode_digits)->Args({2, 4})->Args({8, 6})->Args({4, 16});

void BM_series(benchmark::State& state) {
  auto model = make_propagation_model(4.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pe_unshielded_series(3, 16, 1e8, 3, model));
  }
}
BENCHMARK(BM_series);

void BM_run_experiment(benchmark::State& state) {
  SystemConfig cfg = bench_config(2, 4);
  cfg.snr = 6241.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_experiment(cfg, static_cast<int>(state.range(0))));
  }
  state.SetItemsProcessed(state.iterations() * cfg.trials);
}
BENCHMARK(BM_run_experiment)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
