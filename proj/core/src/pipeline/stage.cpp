#include "anchorsr/pipeline/stage.hpp"

#include <algorithm>

#include "anchorsr/error.hpp"
#include "anchorsr/image/resample.hpp"
#include "anchorsr/patch/pairs.hpp"
#include "anchorsr/patch/pool.hpp"

namespace anchorsr {
namespace {

constexpr std::size_t kChunk = 4096;

}  // namespace

void SRStage::validate() const {
  if (scale < 1) throw InvalidInput("stage: scale must be >= 1");
  if (stride < 1) throw InvalidInput("stage: stride must be >= 1");
  if (encoder.window() < 1) throw InvalidInput("stage: encoder has no window");
  bank.validate();
  if (bank.feature_dim() != encoder.dim()) throw InvalidInput("stage: encoder and bank feature dimensions differ");
  if (bank.target_dim() != encoder.window() * encoder.window()) {
    throw InvalidInput("stage: bank target dimension does not match the window");
  }
  if (bank.contexts.has_value() != (context_scale > 0)) {
    throw InvalidInput("stage: context scale must be set exactly when the bank has contexts");
  }
  if (index) {
    if (index->centroids.rows() != bank.feature_dim() ||
        index->lists.size() != static_cast<std::size_t>(index->centroids.cols())) {
      throw InvalidInput("stage: search index does not match the bank");
    }
    for (const auto& list : index->lists)
      for (int a : list)
        if (a < 0 || a >= bank.size()) throw InvalidInput("stage: search index refers to a missing anchor");
  }
}

OverlapAccumulator::OverlapAccumulator(int width, int height)
    : width_(width),
      height_(height),
      sums_(static_cast<std::size_t>(width) * height, 0.0),
      counts_(static_cast<std::size_t>(width) * height, 0) {}

void OverlapAccumulator::add(int x0, int y0, int window, const double* residual) {
  if (x0 < 0 || y0 < 0 || x0 + window > width_ || y0 + window > height_) {
    throw InvalidInput("overlap accumulator: window outside the image");
  }
  for (int dy = 0; dy < window; ++dy) {
    const std::size_t row = static_cast<std::size_t>(y0 + dy) * width_ + x0;
    for (int dx = 0; dx < window; ++dx) {
      sums_[row + dx] += *residual++;
      ++counts_[row + dx];
    }
  }
}

Image OverlapAccumulator::resolve(const Image& base) const {
  if (base.width() != width_ || base.height() != height_ || base.channels() != 1) {
    throw InvalidInput("overlap accumulator: base shape mismatch");
  }
  Image out = base;
  auto px = out.plane(0);
  for (std::size_t i = 0; i < px.size(); ++i)
    if (counts_[i] > 0) px[i] += sums_[i] / counts_[i];
  return out;
}

StageRun run_stage(const SRStage& stage, const Image& input) {
  if (input.channels() != 1) throw InvalidInput("sr_stage: expects a luma image");
  StageRun run;
  run.image = stage.scale == 1 ? input : upscale(input, stage.scale);
  const Image& base = run.image;
  const int p = stage.window();
  if (base.width() < p || base.height() < p) {
    run.too_small = true;
    return run;
  }

  const auto xs = covering_offsets(base.width(), p, stage.stride);
  const auto ys = covering_offsets(base.height(), p, stage.stride);
  const std::size_t total = xs.size() * ys.size();
  const int raw_dim = raw_feature_dim(p);
  const int patch = p * p;

  const FilterResponses r = filter_responses(base);
  const bool with_ctx = stage.bank.contexts.has_value();
  Image ctx;
  FilterResponses rc;
  if (with_ctx) {
    ctx = context_image(base, stage.context_scale);
    rc = filter_responses(ctx);
  }

  OverlapAccumulator acc(base.width(), base.height());
  Mat raw(raw_dim, static_cast<Eigen::Index>(kChunk));
  Mat raw_ctx(raw_dim, with_ctx ? static_cast<Eigen::Index>(kChunk) : 0);
  Mat residual(patch, static_cast<Eigen::Index>(kChunk));

  for (std::size_t begin = 0; begin < total; begin += kChunk) {
    const auto n = static_cast<Eigen::Index>(std::min(kChunk, total - begin));
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::size_t w = begin + static_cast<std::size_t>(k);
      const int x0 = xs[w % xs.size()];
      const int y0 = ys[w / xs.size()];
      gather_raw(r, x0, y0, p, std::span<double>(raw.col(k).data(), raw_dim));
      if (with_ctx) {
        const int cx = context_offset(x0, p, stage.context_scale, ctx.width());
        const int cy = context_offset(y0, p, stage.context_scale, ctx.height());
        gather_raw(rc, cx, cy, p, std::span<double>(raw_ctx.col(k).data(), raw_dim));
      }
    }
    const Mat f = stage.encoder.encode(Mat(raw.leftCols(n)));
    const auto anchor = stage.index ? hier_lookup_batch(*stage.index, stage.bank.anchors, f, &run.comparisons)
                                    : linear_lookup_batch(stage.bank.anchors, f, &run.comparisons);
    Mat c;
    if (with_ctx) c = stage.encoder.encode(Mat(raw_ctx.leftCols(n)));
#pragma omp parallel for schedule(static)
    for (Eigen::Index k = 0; k < n; ++k) {
      const int context = with_ctx ? stage.bank.contexts->nearest(c.col(k)) : 0;
      residual.col(k).noalias() = stage.bank.projection(anchor[k], context) * f.col(k);
    }
    for (Eigen::Index k = 0; k < n; ++k) {
      const std::size_t w = begin + static_cast<std::size_t>(k);
      acc.add(xs[w % xs.size()], ys[w / xs.size()], p, residual.col(k).data());
    }
  }
  run.windows = total;
  run.image = acc.resolve(base);
  return run;
}

}  // namespace anchorsr
