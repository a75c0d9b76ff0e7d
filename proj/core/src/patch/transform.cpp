#include "anchorsr/patch/transform.hpp"

#include "anchorsr/error.hpp"

namespace anchorsr {
namespace {

Image flip_vertical(const Image& img) {
  Image out(img.width(), img.height(), img.color_space());
  for (int c = 0; c < img.channels(); ++c)
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < img.width(); ++x) out.at(x, img.height() - 1 - y, c) = img.at(x, y, c);
  return out;
}

// Counter-clockwise quarter turn: (x, y) -> (y, w - 1 - x).
Image rotate_ccw(const Image& img) {
  const int w = img.width();
  Image out(img.height(), w, img.color_space());
  for (int c = 0; c < img.channels(); ++c)
    for (int y = 0; y < img.height(); ++y)
      for (int x = 0; x < w; ++x) out.at(y, w - 1 - x, c) = img.at(x, y, c);
  return out;
}

Image rotate(const Image& img, int quarter_turns) {
  Image out = img;
  for (int i = 0; i < quarter_turns; ++i) out = rotate_ccw(out);
  return out;
}

void check(TransformId t) {
  if (t.quarter_turns < 0 || t.quarter_turns > 3) throw InvalidInput("transform: quarter_turns must be 0..3");
}

}  // namespace

std::array<TransformId, 8> all_transforms() noexcept {
  return {TransformId{0, false}, TransformId{1, false}, TransformId{2, false}, TransformId{3, false},
          TransformId{0, true},  TransformId{1, true},  TransformId{2, true},  TransformId{3, true}};
}

Image apply_transform(const Image& img, TransformId t) {
  check(t);
  return rotate(t.flip ? flip_vertical(img) : img, t.quarter_turns);
}

Image invert_transform(const Image& img, TransformId t) {
  check(t);
  Image out = rotate(img, (4 - t.quarter_turns) % 4);
  return t.flip ? flip_vertical(out) : out;
}

std::vector<Image> augment_images(const std::vector<Image>& imgs) {
  std::vector<Image> out;
  out.reserve(imgs.size() * 8);
  for (const Image& img : imgs)
    for (TransformId t : all_transforms()) out.push_back(apply_transform(img, t));
  return out;
}

}  // namespace anchorsr
