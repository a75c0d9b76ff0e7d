#include <benchmark/benchmark.h>

#include <random>

#include "anchorsr/search/search.hpp"

using namespace anchorsr;

namespace {

Mat unit_columns(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  m.colwise().normalize();
  return m;
}

constexpr int kDim = 30;
constexpr int kQueries = 4096;

void BM_LinearLookup(benchmark::State& state) {
  const AnchorDictionary d(unit_columns(kDim, state.range(0), 1));
  const Mat q = unit_columns(kDim, kQueries, 2);
  for (auto _ : state) benchmark::DoNotOptimize(linear_lookup_batch(d, q));
  state.SetItemsProcessed(state.iterations() * kQueries);
}

void BM_HierLookup(benchmark::State& state) {
  const AnchorDictionary d(unit_columns(kDim, state.range(0), 1));
  const HierIndex idx = build_hier(d, 4.0, 3);
  const Mat q = unit_columns(kDim, kQueries, 2);
  std::size_t comparisons = 0;
  for (auto _ : state) benchmark::DoNotOptimize(hier_lookup_batch(idx, d, q, &comparisons));
  state.SetItemsProcessed(state.iterations() * kQueries);
  state.counters["cmp/query"] = static_cast<double>(comparisons) / (state.iterations() * kQueries);
}

}  // namespace

BENCHMARK(BM_LinearLookup)->Arg(1024)->Arg(8192)->Arg(65536)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_HierLookup)->Arg(1024)->Arg(8192)->Arg(65536)->Unit(benchmark::kMillisecond);
