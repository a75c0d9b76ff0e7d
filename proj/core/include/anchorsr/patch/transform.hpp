#pragma once

#include <array>
#include <vector>

#include "anchorsr/image/image.hpp"

namespace anchorsr {

/// One element of the dihedral group of the square: an optional upside-down
/// flip followed by `quarter_turns` counter-clockwise 90 degree rotations.
struct TransformId {
  int quarter_turns = 0;  // 0..3
  bool flip = false;

  friend bool operator==(TransformId, TransformId) = default;
};

/// All 8 transforms, identity first, then rotations 90/180/270, then the
/// flipped variants in the same rotation order.
std::array<TransformId, 8> all_transforms() noexcept;

Image apply_transform(const Image& img, TransformId t);
Image invert_transform(const Image& img, TransformId t);

/// Every input expanded into its 8 transformed variants (original first).
std::vector<Image> augment_images(const std::vector<Image>& imgs);

}  // namespace anchorsr
