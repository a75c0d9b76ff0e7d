#include "anchorsr/patch/pool.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "anchorsr/error.hpp"
#include "anchorsr/image/resample.hpp"
#include "anchorsr/patch/pairs.hpp"

namespace anchorsr {
namespace {

constexpr Eigen::Index kBlock = 2048;

void check(const StageData& data) {
  if (data.window < 1) throw InvalidInput("stage data: window must be >= 1");
  if (data.bases.size() != data.targets.size()) throw InvalidInput("stage data: bases/targets count mismatch");
  for (std::size_t i = 0; i < data.bases.size(); ++i) {
    const Image& b = data.bases[i];
    if (b.channels() != 1 || !b.same_shape(data.targets[i])) {
      throw InvalidInput("stage data: base and target must be luma planes of equal size");
    }
    if (b.width() > std::numeric_limits<std::uint16_t>::max() ||
        b.height() > std::numeric_limits<std::uint16_t>::max()) {
      throw InvalidInput("stage data: image too large for window references");
    }
  }
}

// Windows grouped by image: (column in output, ref).
std::vector<std::vector<std::pair<std::size_t, WindowRef>>> by_image(const StageData& data,
                                                                      std::span<const WindowRef> refs) {
  std::vector<std::vector<std::pair<std::size_t, WindowRef>>> groups(data.bases.size());
  for (std::size_t i = 0; i < refs.size(); ++i) {
    if (refs[i].image >= data.bases.size()) throw InvalidInput("window reference to unknown image");
    groups[refs[i].image].emplace_back(i, refs[i]);
  }
  return groups;
}

}  // namespace

Image context_image(const Image& base, int context_scale) {
  if (context_scale < 1) throw InvalidInput("context_image: scale must be >= 1");
  return bicubic_resize(base, std::max(1, base.width() / context_scale), std::max(1, base.height() / context_scale));
}

int context_offset(int offset, int window, int context_scale, int context_len) {
  const double centre = offset + (window - 1) / 2.0;
  const double ctx_centre = (centre + 0.5) / context_scale - 0.5;
  const int start = static_cast<int>(std::lround(ctx_centre - (window - 1) / 2.0));
  if (context_len <= window) return 0;
  return std::clamp(start, 0, context_len - window);
}

std::vector<WindowRef> enumerate_windows(const StageData& data, int stride, double flat_threshold) {
  check(data);
  const int p = data.window;
  const double min_sq = flat_threshold * flat_threshold;
  std::vector<WindowRef> out;
  for (std::size_t i = 0; i < data.bases.size(); ++i) {
    const Image& base = data.bases[i];
    if (base.width() < p || base.height() < p) continue;
    const FilterResponses r = filter_responses(base);
    // summed-area table of the squared responses over all filters
    const int w = base.width();
    const int h = base.height();
    std::vector<double> sat(static_cast<std::size_t>(w + 1) * (h + 1), 0.0);
    for (int y = 0; y < h; ++y) {
      double row = 0.0;
      for (int x = 0; x < w; ++x) {
        for (int k = 0; k < kFilterCount; ++k) {
          const double v = r.at(k, x, y);
          row += v * v;
        }
        sat[static_cast<std::size_t>(y + 1) * (w + 1) + x + 1] = sat[static_cast<std::size_t>(y) * (w + 1) + x + 1] + row;
      }
    }
    auto s = [&](int x, int y) { return sat[static_cast<std::size_t>(y) * (w + 1) + x]; };
    for (int y0 : window_offsets(h, p, stride)) {
      for (int x0 : window_offsets(w, p, stride)) {
        const double energy = s(x0 + p, y0 + p) - s(x0, y0 + p) - s(x0 + p, y0) + s(x0, y0);
        if (energy < min_sq) continue;
        out.push_back(WindowRef{static_cast<std::uint32_t>(i), static_cast<std::uint16_t>(x0),
                                static_cast<std::uint16_t>(y0)});
      }
    }
  }
  return out;
}

void accumulate_pca(const StageData& data, std::span<const WindowRef> refs, PcaAccumulator& acc) {
  check(data);
  const int p = data.window;
  const int raw_dim = raw_feature_dim(p);
  if (acc.dim() != raw_dim) throw InvalidInput("accumulate_pca: accumulator dimension mismatch");
  const auto groups = by_image(data, refs);
  Mat block(raw_dim, kBlock);
  for (std::size_t img = 0; img < groups.size(); ++img) {
    if (groups[img].empty()) continue;
    const FilterResponses r = filter_responses(data.bases[img]);
    Eigen::Index fill = 0;
    for (const auto& [col, ref] : groups[img]) {
      gather_raw(r, ref.x, ref.y, p, std::span<double>(block.col(fill).data(), raw_dim));
      if (++fill == kBlock) {
        acc.add(block);
        fill = 0;
      }
    }
    if (fill > 0) acc.add(Mat(block.leftCols(fill)));
  }
}

TrainingSet encode_windows(const StageData& data, std::span<const WindowRef> refs, const FeatureEncoder& encoder) {
  check(data);
  const int p = data.window;
  if (encoder.window() != p) throw InvalidInput("encode_windows: encoder window does not match stage data");
  const int raw_dim = raw_feature_dim(p);
  const auto n = static_cast<Eigen::Index>(refs.size());
  const bool with_ctx = data.context_scale > 0;

  TrainingSet set;
  set.features.resize(encoder.dim(), n);
  set.targets.resize(static_cast<Eigen::Index>(p) * p, n);
  if (with_ctx) set.contexts.resize(encoder.dim(), n);

  const auto groups = by_image(data, refs);
  Mat block(raw_dim, kBlock);
  Mat ctx_block(raw_dim, with_ctx ? kBlock : 0);
  std::vector<std::size_t> cols;
  cols.reserve(kBlock);

  for (std::size_t img = 0; img < groups.size(); ++img) {
    if (groups[img].empty()) continue;
    const Image& base = data.bases[img];
    const Image& target = data.targets[img];
    const FilterResponses r = filter_responses(base);
    Image ctx;
    FilterResponses rc;
    if (with_ctx) {
      ctx = context_image(base, data.context_scale);
      rc = filter_responses(ctx);
    }

    auto flush = [&](Eigen::Index fill) {
      const Mat f = encoder.encode(Mat(block.leftCols(fill)));
      Mat c;
      if (with_ctx) c = encoder.encode(Mat(ctx_block.leftCols(fill)));
      for (Eigen::Index k = 0; k < fill; ++k) {
        const auto col = static_cast<Eigen::Index>(cols[k]);
        set.features.col(col) = f.col(k).cast<float>();
        if (with_ctx) set.contexts.col(col) = c.col(k).cast<float>();
      }
      cols.clear();
    };

    Eigen::Index fill = 0;
    for (const auto& [col, ref] : groups[img]) {
      gather_raw(r, ref.x, ref.y, p, std::span<double>(block.col(fill).data(), raw_dim));
      if (with_ctx) {
        const int cx = context_offset(ref.x, p, data.context_scale, ctx.width());
        const int cy = context_offset(ref.y, p, data.context_scale, ctx.height());
        gather_raw(rc, cx, cy, p, std::span<double>(ctx_block.col(fill).data(), raw_dim));
      }
      float* t = set.targets.col(static_cast<Eigen::Index>(col)).data();
      for (int dy = 0; dy < p; ++dy)
        for (int dx = 0; dx < p; ++dx)
          *t++ = static_cast<float>(target.at(ref.x + dx, ref.y + dy) - base.at(ref.x + dx, ref.y + dy));
      cols.push_back(col);
      if (++fill == kBlock) {
        flush(fill);
        fill = 0;
      }
    }
    if (fill > 0) flush(fill);
  }
  return set;
}

}  // namespace anchorsr
