#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "anchorsr/image/image.hpp"
#include "anchorsr/linalg.hpp"
#include "anchorsr/patch/features.hpp"

namespace anchorsr {

/// Images a single cascade stage learns from. Features are computed on
/// `bases`; regression targets are `targets - bases` over the same window.
struct StageData {
  int window = 0;
  /// Downscale factor of the context image; 0 disables context features.
  int context_scale = 0;
  std::vector<Image> bases;
  std::vector<Image> targets;
};

struct WindowRef {
  std::uint32_t image = 0;
  std::uint16_t x = 0;
  std::uint16_t y = 0;
  friend bool operator==(WindowRef, WindowRef) = default;
};

/// Encoded training set: one column per window.
struct TrainingSet {
  MatF features;  // encoder.dim() x n
  MatF targets;   // window^2 x n residuals
  MatF contexts;  // encoder.dim() x n, empty without context features

  std::size_t size() const noexcept { return static_cast<std::size_t>(features.cols()); }
  bool has_contexts() const noexcept { return contexts.size() > 0; }
};

/// The context image: `base` downscaled by `context_scale`.
Image context_image(const Image& base, int context_scale);

/// Top-left offset of the context window for a feature window starting at
/// `offset` on the base grid (axis-wise). Clamped inside the context image
/// when it is large enough.
int context_offset(int offset, int window, int context_scale, int context_len);

/// Every window at `stride` whose raw gradient feature has l2 norm at least
/// `flat_threshold`, image by image in raster order.
std::vector<WindowRef> enumerate_windows(const StageData& data, int stride, double flat_threshold);

/// Feeds the raw features of `refs` into a PCA accumulator.
void accumulate_pca(const StageData& data, std::span<const WindowRef> refs, PcaAccumulator& acc);

/// Encodes `refs` with `encoder`; column i corresponds to refs[i].
TrainingSet encode_windows(const StageData& data, std::span<const WindowRef> refs, const FeatureEncoder& encoder);

}  // namespace anchorsr
