#pragma once

#include <cstdint>
#include <vector>

#include "anchorsr/image/image.hpp"

namespace anchorsr {

struct SourceId {
  int image = 0;
  int x = 0;  // top-left corner of the window on the HR grid
  int y = 0;
};

/// One LR/HR training example. The LR side is the raw (pre-PCA) gradient
/// feature of the window on the bicubic-upscaled LR image; the HR side is the
/// residual HR - bicubic over the same window.
struct PatchPair {
  std::vector<double> lr_feature;
  std::vector<double> hr_target;
  SourceId source;
};

/// Window side on the HR grid for a stage of magnification `s` (3 LR pixels).
constexpr int window_for_scale(int s) noexcept { return 3 * s; }

/// Top-left offsets of windows of side `window` along an axis of length
/// `len`, stepping by `stride`, all fully inside.
std::vector<int> window_offsets(int len, int window, int stride);

/// As window_offsets but the last window is always flush with the far border,
/// so every pixel is covered.
std::vector<int> covering_offsets(int len, int window, int stride);

/// Degrades `hr` by `s` (after cropping to a multiple of `s`), upscales it
/// back, and cuts the 3s x 3s windows at `stride`.
std::vector<PatchPair> extract_pairs(const Image& hr, int s, int stride, int image_id = 0);

}  // namespace anchorsr
