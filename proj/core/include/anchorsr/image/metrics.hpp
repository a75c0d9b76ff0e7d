#pragma once

#include <limits>

#include "anchorsr/image/color.hpp"
#include "anchorsr/image/image.hpp"

namespace anchorsr {

inline constexpr double kInfinitePsnr = std::numeric_limits<double>::infinity();

/// Mean squared luminance error with a `border`-pixel frame excluded.
double mse_luma(const Image& ref, const Image& test, int border, YCbCrRange range = YCbCrRange::full);

/// PSNR = 10 log10(255^2 / MSE) on the luminance plane, excluding `s` pixels
/// on every side. Identical inputs return kInfinitePsnr.
double psnr_luma(const Image& ref, const Image& test, int s, YCbCrRange range = YCbCrRange::full);

/// Root mean squared difference over all samples (no border handling).
double rmse(const Image& a, const Image& b);

}  // namespace anchorsr
