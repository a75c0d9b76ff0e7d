#include <benchmark/benchmark.h>

#include <random>

#include "anchorsr/pipeline/stage.hpp"

using namespace anchorsr;

namespace {

SRStage random_stage(int anchors) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n;
  auto fill = [&](Eigen::Index r, Eigen::Index c) {
    Mat m(r, c);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
    return m;
  };
  const int window = 9;
  const int dim = 30;
  Mat basis = fill(raw_feature_dim(window), dim);
  basis = Eigen::HouseholderQR<Mat>(basis).householderQ() * Mat::Identity(basis.rows(), dim);
  SRStage st;
  st.encoder = FeatureEncoder(window, basis, 0.99);
  st.bank.anchors = AnchorDictionary(fill(dim, anchors));
  for (int j = 0; j < anchors; ++j) st.bank.projections.push_back(0.01 * fill(window * window, dim));
  st.scale = 3;
  return st;
}

void BM_SrStage(benchmark::State& state) {
  const SRStage st = random_stage(static_cast<int>(state.range(0)));
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 255.0);
  Image lr = Image::luma(96, 96);
  for (double& v : lr.samples()) v = u(rng);
  for (auto _ : state) benchmark::DoNotOptimize(sr_stage(st, lr));
  state.SetItemsProcessed(state.iterations() * 288 * 288);
}

}  // namespace

BENCHMARK(BM_SrStage)->Arg(1024)->Unit(benchmark::kMillisecond);
