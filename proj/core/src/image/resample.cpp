#include "anchorsr/image/resample.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "anchorsr/error.hpp"

namespace anchorsr {
namespace {

// Sparse 1-D resampling operator: output i = sum_k weight[k] * input[index[k]].
struct Contributions {
  int taps = 0;
  std::vector<int> index;
  std::vector<double> weight;
};

Contributions contributions(int in_len, int out_len) {
  const double scale = static_cast<double>(out_len) / in_len;
  const bool shrink = scale < 1.0;
  const double width = shrink ? 4.0 / scale : 4.0;

  Contributions c;
  c.taps = static_cast<int>(std::ceil(width)) + 2;
  c.index.resize(static_cast<std::size_t>(out_len) * c.taps);
  c.weight.resize(c.index.size());
  for (int i = 0; i < out_len; ++i) {
    const double u = (i + 0.5) / scale - 0.5;
    const int left = static_cast<int>(std::floor(u - width / 2.0));
    double sum = 0.0;
    for (int k = 0; k < c.taps; ++k) {
      const double d = u - (left + k);
      const double w = shrink ? scale * cubic_kernel(scale * d) : cubic_kernel(d);
      c.weight[i * c.taps + k] = w;
      c.index[i * c.taps + k] = std::clamp(left + k, 0, in_len - 1);
      sum += w;
    }
    for (int k = 0; k < c.taps; ++k) c.weight[i * c.taps + k] /= sum;
  }
  return c;
}

}  // namespace

double cubic_kernel(double x) noexcept {
  const double a = std::abs(x);
  const double a2 = a * a;
  const double a3 = a2 * a;
  if (a <= 1.0) return 1.5 * a3 - 2.5 * a2 + 1.0;
  if (a <= 2.0) return -0.5 * a3 + 2.5 * a2 - 4.0 * a + 2.0;
  return 0.0;
}

Image bicubic_resize(const Image& img, int out_width, int out_height) {
  if (out_width < 1 || out_height < 1) {
    throw InvalidInput("bicubic_resize: target dimensions must be >= 1, got " + std::to_string(out_width) +
                       "x" + std::to_string(out_height));
  }
  if (img.width() < 1 || img.height() < 1) throw InvalidInput("bicubic_resize: empty input image");
  if (out_width == img.width() && out_height == img.height()) return img;

  const Contributions cx = contributions(img.width(), out_width);
  const Contributions cy = contributions(img.height(), out_height);
  const int in_w = img.width();
  const int in_h = img.height();

  Image out(out_width, out_height, img.color_space());
  std::vector<double> tmp(static_cast<std::size_t>(out_width) * in_h);
  for (int c = 0; c < img.channels(); ++c) {
    auto src = img.plane(c);
    for (int y = 0; y < in_h; ++y) {
      const double* row = src.data() + static_cast<std::size_t>(y) * in_w;
      double* dst = tmp.data() + static_cast<std::size_t>(y) * out_width;
      for (int x = 0; x < out_width; ++x) {
        double acc = 0.0;
        for (int k = 0; k < cx.taps; ++k) acc += cx.weight[x * cx.taps + k] * row[cx.index[x * cx.taps + k]];
        dst[x] = acc;
      }
    }
    auto dst = out.plane(c);
    for (int y = 0; y < out_height; ++y) {
      double* row = dst.data() + static_cast<std::size_t>(y) * out_width;
      std::fill(row, row + out_width, 0.0);
      for (int k = 0; k < cy.taps; ++k) {
        const double w = cy.weight[y * cy.taps + k];
        if (w == 0.0) continue;
        const double* srow = tmp.data() + static_cast<std::size_t>(cy.index[y * cy.taps + k]) * out_width;
        for (int x = 0; x < out_width; ++x) row[x] += w * srow[x];
      }
    }
  }
  return out;
}

Image upscale(const Image& img, int s) {
  if (s < 1) throw InvalidInput("upscale: scale must be >= 1");
  return bicubic_resize(img, img.width() * s, img.height() * s);
}

Image degrade(const Image& hr, int s) {
  if (s < 1) throw InvalidInput("degrade: scale must be >= 1");
  if (hr.width() % s != 0 || hr.height() % s != 0) {
    throw InvalidInput("degrade: image " + std::to_string(hr.width()) + "x" + std::to_string(hr.height()) +
                       " is not divisible by " + std::to_string(s));
  }
  if (hr.width() < s || hr.height() < s) throw InvalidInput("degrade: image smaller than scale factor");
  return bicubic_resize(hr, hr.width() / s, hr.height() / s);
}

Image crop_to_multiple(const Image& img, int s) {
  if (s < 1) throw InvalidInput("crop_to_multiple: scale must be >= 1");
  const int w = img.width() - img.width() % s;
  const int h = img.height() - img.height() % s;
  if (w == img.width() && h == img.height()) return img;
  Image out(w, h, img.color_space());
  for (int c = 0; c < img.channels(); ++c)
    for (int y = 0; y < h; ++y)
      for (int x = 0; x < w; ++x) out.at(x, y, c) = img.at(x, y, c);
  return out;
}

}  // namespace anchorsr
