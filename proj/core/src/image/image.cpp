#include "anchorsr/image/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anchorsr/error.hpp"

namespace anchorsr {

int channels_for(ColorSpace space) noexcept { return space == ColorSpace::luma ? 1 : 3; }

Image::Image(int width, int height, ColorSpace space, double fill)
    : width_(width), height_(height), channels_(channels_for(space)), space_(space) {
  if (width < 0 || height < 0) {
    throw InvalidInput("image dimensions must be non-negative, got " + std::to_string(width) + "x" +
                       std::to_string(height));
  }
  data_.assign(plane_size() * channels_, fill);
}

Image Image::channel(int c) const {
  if (c < 0 || c >= channels_) throw InvalidInput("channel index out of range");
  Image out = Image::luma(width_, height_);
  std::ranges::copy(plane(c), out.data_.begin());
  return out;
}

void Image::set_channel(int c, const Image& src) {
  if (c < 0 || c >= channels_) throw InvalidInput("channel index out of range");
  if (src.width_ != width_ || src.height_ != height_ || src.channels_ != 1) {
    throw InvalidInput("set_channel: source must be a single plane of matching size");
  }
  std::ranges::copy(src.data_, plane(c).begin());
}

void Image::set_color_space(ColorSpace space) {
  if (channels_for(space) != channels_) throw InvalidInput("color space incompatible with channel count");
  space_ = space;
}

double max_abs_diff(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw InvalidInput("max_abs_diff: shape mismatch");
  double m = 0.0;
  auto sa = a.samples();
  auto sb = b.samples();
  for (std::size_t i = 0; i < sa.size(); ++i) m = std::max(m, std::abs(sa[i] - sb[i]));
  return m;
}

}  // namespace anchorsr
