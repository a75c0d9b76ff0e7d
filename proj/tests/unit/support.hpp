#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "anchorsr/image/image.hpp"
#include "anchorsr/linalg.hpp"

namespace anchorsr::test {

inline Image random_luma(int w, int h, std::uint64_t seed, double lo = 0.0, double hi = 255.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(lo, hi);
  Image img = Image::luma(w, h);
  for (double& v : img.samples()) v = u(rng);
  return img;
}

// Smooth-ish content with edges: sums of sinusoids plus a few steps.
inline Image textured_luma(int w, int h, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double fx1 = 0.05 + 0.3 * u(rng), fy1 = 0.05 + 0.3 * u(rng);
  const double fx2 = 0.02 + 0.1 * u(rng), fy2 = 0.02 + 0.1 * u(rng);
  const double cx = w * u(rng), cy = h * u(rng), r = 0.25 * std::min(w, h);
  Image img = Image::luma(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      double v = 128.0 + 40.0 * std::sin(fx1 * x + fy1 * y) + 30.0 * std::cos(fx2 * x * x / (w + 1.0) + fy2 * y);
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) < r * r) v += 50.0;
      if (x > w / 2 + y / 3) v -= 40.0;
      img.at(x, y) = std::clamp(v, 0.0, 255.0);
    }
  }
  return img;
}

inline Mat random_matrix(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n(0.0, 1.0);
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(rng);
  return m;
}

inline Mat random_unit_columns(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed) {
  Mat m = random_matrix(rows, cols, seed);
  for (Eigen::Index j = 0; j < cols; ++j) m.col(j).normalize();
  return m;
}

}  // namespace anchorsr::test
