#include "anchorsr/regress/select.hpp"

#include <algorithm>
#include <numeric>

namespace anchorsr {
namespace {

std::vector<std::uint32_t> exact_top(std::span<const float> scores, std::vector<std::uint32_t> cand, std::size_t k) {
  auto better = [&](std::uint32_t a, std::uint32_t b) {
    return scores[a] > scores[b] || (scores[a] == scores[b] && a < b);
  };
  if (cand.size() > k) {
    std::nth_element(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(k), cand.end(), better);
    cand.resize(k);
  }
  std::sort(cand.begin(), cand.end());
  return cand;
}

}  // namespace

std::vector<std::uint32_t> select_top(std::span<const float> scores, std::size_t k) {
  const std::size_t n = scores.size();
  k = std::min(k, n);
  if (k == 0) return {};
  if (k == n) {
    std::vector<std::uint32_t> all(n);
    std::iota(all.begin(), all.end(), 0u);
    return all;
  }

  // Estimate a threshold below the k-th largest score from a strided
  // subsample, keep everything above it, and finish exactly. Falls back to a
  // full selection if the estimate was too optimistic.
  constexpr std::size_t kMinForPrefilter = 1u << 16;
  if (n >= kMinForPrefilter && k * 8 < n) {
    const std::size_t stride = std::max<std::size_t>(1, n / 32768);
    std::vector<float> sub;
    sub.reserve(n / stride + 1);
    for (std::size_t i = 0; i < n; i += stride) sub.push_back(scores[i]);
    const double frac = static_cast<double>(k) / static_cast<double>(n);
    const auto rank = std::min(sub.size() - 1, static_cast<std::size_t>(frac * sub.size() * 3.0) + 16);
    std::nth_element(sub.begin(), sub.begin() + static_cast<std::ptrdiff_t>(rank), sub.end(), std::greater<>());
    const float threshold = sub[rank];
    std::vector<std::uint32_t> cand;
    cand.reserve(rank * stride * 2);
    for (std::size_t i = 0; i < n; ++i)
      if (scores[i] >= threshold) cand.push_back(static_cast<std::uint32_t>(i));
    if (cand.size() >= k) return exact_top(scores, std::move(cand), k);
  }
  std::vector<std::uint32_t> all(n);
  std::iota(all.begin(), all.end(), 0u);
  return exact_top(scores, std::move(all), k);
}

}  // namespace anchorsr
