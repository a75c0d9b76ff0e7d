#include "anchorsr/image/metrics.hpp"

#include <cmath>

#include "anchorsr/error.hpp"

namespace anchorsr {

double mse_luma(const Image& ref, const Image& test, int border, YCbCrRange range) {
  if (ref.width() != test.width() || ref.height() != test.height()) {
    throw InvalidInput("psnr: dimension mismatch");
  }
  if (border < 0) throw InvalidInput("psnr: negative border");
  if (ref.width() <= 2 * border || ref.height() <= 2 * border) {
    throw InvalidInput("psnr: image too small for the border crop");
  }
  const Image a = to_luma(ref, range);
  const Image b = to_luma(test, range);
  double sum = 0.0;
  for (int y = border; y < a.height() - border; ++y) {
    for (int x = border; x < a.width() - border; ++x) {
      const double d = a.at(x, y) - b.at(x, y);
      sum += d * d;
    }
  }
  const double n = static_cast<double>(a.width() - 2 * border) * (a.height() - 2 * border);
  return sum / n;
}

double psnr_luma(const Image& ref, const Image& test, int s, YCbCrRange range) {
  const double mse = mse_luma(ref, test, s, range);
  if (mse == 0.0) return kInfinitePsnr;
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

double rmse(const Image& a, const Image& b) {
  if (!a.same_shape(b)) throw InvalidInput("rmse: shape mismatch");
  auto sa = a.samples();
  auto sb = b.samples();
  if (sa.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t i = 0; i < sa.size(); ++i) {
    const double d = sa[i] - sb[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(sa.size()));
}

}  // namespace anchorsr
