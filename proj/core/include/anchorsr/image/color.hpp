#pragma once

#include "anchorsr/image/image.hpp"

namespace anchorsr {

/// BT.601 luma/chroma variants.
///  - full:   Y in [0,255], Cb/Cr centred on 128 (JPEG convention).
///  - studio: Y in [16,235], Cb/Cr in [16,240] (MATLAB rgb2ycbcr, used by
///            the published SR benchmark tables).
enum class YCbCrRange { full, studio };

Image rgb_to_ycbcr(const Image& rgb, YCbCrRange range = YCbCrRange::full);
Image ycbcr_to_rgb(const Image& ycbcr, YCbCrRange range = YCbCrRange::full);

/// Luminance plane of any image: luma is copied, YCbCr returns plane 0,
/// RGB is converted with `range`.
Image to_luma(const Image& img, YCbCrRange range = YCbCrRange::full);

}  // namespace anchorsr
