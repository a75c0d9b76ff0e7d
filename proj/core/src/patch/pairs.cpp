#include "anchorsr/patch/pairs.hpp"

#include "anchorsr/error.hpp"
#include "anchorsr/image/resample.hpp"
#include "anchorsr/patch/features.hpp"

namespace anchorsr {

std::vector<int> window_offsets(int len, int window, int stride) {
  if (stride < 1) throw InvalidInput("stride must be >= 1");
  std::vector<int> out;
  for (int o = 0; o + window <= len; o += stride) out.push_back(o);
  return out;
}

std::vector<int> covering_offsets(int len, int window, int stride) {
  std::vector<int> out = window_offsets(len, window, stride);
  if (!out.empty() && out.back() + window < len) out.push_back(len - window);
  return out;
}

std::vector<PatchPair> extract_pairs(const Image& hr, int s, int stride, int image_id) {
  if (hr.channels() != 1) throw InvalidInput("extract_pairs: expects a luma image");
  if (s < 1) throw InvalidInput("extract_pairs: scale must be >= 1");
  if (stride < 1) throw InvalidInput("extract_pairs: stride must be >= 1");
  const Image crop = crop_to_multiple(hr, s);
  const int window = window_for_scale(s);
  if (crop.width() < window || crop.height() < window) return {};

  const Image mid = upscale(degrade(crop, s), s);
  const FilterResponses resp = filter_responses(mid);
  std::vector<PatchPair> out;
  for (int y0 : window_offsets(crop.height(), window, stride)) {
    for (int x0 : window_offsets(crop.width(), window, stride)) {
      PatchPair p;
      p.source = {image_id, x0, y0};
      p.lr_feature = raw_feature(resp, x0, y0, window);
      p.hr_target.reserve(static_cast<std::size_t>(window) * window);
      for (int dy = 0; dy < window; ++dy)
        for (int dx = 0; dx < window; ++dx)
          p.hr_target.push_back(crop.at(x0 + dx, y0 + dy) - mid.at(x0 + dx, y0 + dy));
      out.push_back(std::move(p));
    }
  }
  return out;
}

}  // namespace anchorsr
