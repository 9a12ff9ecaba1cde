#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "vadbench/engines.h"
#include "vadbench/ground_truth.h"
#include "vadbench/hysteresis.h"
#include "vadbench/metrics.h"

namespace {

struct Data {
  std::vector<double> scores;
  std::vector<bool> labels;
};

Data random_data(std::size_t n) {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Data d;
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = u(rng) < 0.3;
    d.labels.push_back(pos);
    d.scores.push_back(std::min(1.0, u(rng) * 0.7 + (pos ? 0.3 : 0.0)));
  }
  return d;
}

void BM_RocCurve(benchmark::State& state) {
  const auto d = random_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(vadbench::roc_curve(d.scores, d.labels).area);
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RocCurve)->Arg(1000)->Arg(100000);

void BM_MccSweep(benchmark::State& state) {
  const auto d = random_data(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vadbench::mcc_threshold_sweep(d.scores, d.labels, 0.05).data());
  }
}
BENCHMARK(BM_MccSweep)->Arg(100000);

void BM_GridSearch(benchmark::State& state) {
  const auto d = random_data(60000);
  const std::vector<vadbench::PredictionTrace> traces{{"RMS", 10, d.scores, "a"}};
  const std::vector<vadbench::WindowLabelTrack> labels{{d.labels, 10, "a"}};
  const double step = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(vadbench::grid_search_hysteresis(traces, labels, step).best_mcc);
  }
}
BENCHMARK(BM_GridSearch)->Arg(4)->Arg(20);

}  // namespace
