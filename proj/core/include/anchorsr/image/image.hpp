#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace anchorsr {

enum class ColorSpace { rgb, ycbcr, luma };

/// Planar floating-point raster. Samples nominally live in [0, 255]; nothing
/// clamps them except 8-bit export, so intermediate results may overshoot.
class Image {
 public:
  Image() = default;
  Image(int width, int height, ColorSpace space, double fill = 0.0);

  static Image luma(int width, int height, double fill = 0.0) {
    return Image(width, height, ColorSpace::luma, fill);
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int channels() const noexcept { return channels_; }
  ColorSpace color_space() const noexcept { return space_; }
  bool empty() const noexcept { return data_.empty(); }
  std::size_t plane_size() const noexcept {
    return static_cast<std::size_t>(width_) * static_cast<std::size_t>(height_);
  }

  double& at(int x, int y, int c = 0) noexcept {
    return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
  }
  double at(int x, int y, int c = 0) const noexcept {
    return data_[c * plane_size() + static_cast<std::size_t>(y) * width_ + x];
  }

  std::span<double> plane(int c) noexcept { return {data_.data() + c * plane_size(), plane_size()}; }
  std::span<const double> plane(int c) const noexcept {
    return {data_.data() + c * plane_size(), plane_size()};
  }
  std::span<double> samples() noexcept { return data_; }
  std::span<const double> samples() const noexcept { return data_; }

  /// Copy of one plane tagged as luma.
  Image channel(int c) const;
  /// Overwrites plane `c` with the single plane of `src` (dimensions must match).
  void set_channel(int c, const Image& src);

  bool same_shape(const Image& other) const noexcept {
    return width_ == other.width_ && height_ == other.height_ && channels_ == other.channels_;
  }
  /// Re-tags the color space; channel count must stay compatible.
  void set_color_space(ColorSpace space);

  friend bool operator==(const Image&, const Image&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  int channels_ = 0;
  ColorSpace space_ = ColorSpace::luma;
  std::vector<double> data_;
};

int channels_for(ColorSpace space) noexcept;

/// Max absolute sample difference; images must have the same shape.
double max_abs_diff(const Image& a, const Image& b);

}  // namespace anchorsr
