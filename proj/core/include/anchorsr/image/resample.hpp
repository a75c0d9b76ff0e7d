#pragma once

#include "anchorsr/image/image.hpp"

namespace anchorsr {

/// Integer magnification factor (>= 2 in the SR pipeline; refinement stages
/// use 1 internally).
struct ScaleFactor {
  int value = 3;
};

/// Cubic convolution kernel, a = -0.5.
double cubic_kernel(double x) noexcept;

/// Separable bicubic resampling with a = -0.5 and edge-replicate padding.
/// When shrinking, the kernel is stretched by the inverse scale (antialiased
/// imresize convention). Same-size resizing is the identity.
Image bicubic_resize(const Image& img, int out_width, int out_height);

/// Bicubic magnification by an integer factor.
Image upscale(const Image& img, int s);

/// The degradation operator D: bicubic downscaling by `s`. Both dimensions
/// must be divisible by `s` (see crop_to_multiple).
Image degrade(const Image& hr, int s);

/// Top-left crop to the largest size divisible by `s`.
Image crop_to_multiple(const Image& img, int s);

}  // namespace anchorsr
