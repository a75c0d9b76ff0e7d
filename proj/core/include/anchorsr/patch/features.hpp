#pragma once

#include <array>
#include <span>
#include <vector>

#include "anchorsr/image/image.hpp"
#include "anchorsr/linalg.hpp"

namespace anchorsr {

inline constexpr int kFilterCount = 4;

/// Responses of the gradient filter bank on one luma plane:
/// [1,0,-1] horizontal, [1,0,-1] vertical, [1,0,-2,0,1] horizontal,
/// [1,0,-2,0,1] vertical. Borders replicate the edge sample.
struct FilterResponses {
  int width = 0;
  int height = 0;
  std::array<std::vector<double>, kFilterCount> planes;

  double at(int k, int x, int y) const noexcept {
    return planes[k][static_cast<std::size_t>(y) * width + x];
  }
};

FilterResponses filter_responses(const Image& luma);

constexpr int raw_feature_dim(int window) noexcept { return kFilterCount * window * window; }

/// Flattened raw feature of the `window` x `window` patch with top-left corner
/// (x0, y0). Layout is [filter][row][column]. Coordinates outside the plane
/// are clamped to the border.
void gather_raw(const FilterResponses& r, int x0, int y0, int window, std::span<double> out);
std::vector<double> raw_feature(const FilterResponses& r, int x0, int y0, int window);

/// Gradient features followed by a PCA projection (no centering, the filter
/// responses are zero-mean by construction).
class FeatureEncoder {
 public:
  FeatureEncoder() = default;
  FeatureEncoder(int window, Mat basis, double energy_kept);

  int window() const noexcept { return window_; }
  int raw_dim() const noexcept { return static_cast<int>(basis_.rows()); }
  int dim() const noexcept { return static_cast<int>(basis_.cols()); }
  const Mat& basis() const noexcept { return basis_; }
  double energy_kept() const noexcept { return energy_kept_; }

  Vec encode(std::span<const double> raw) const;
  /// Column-wise encode of a raw_dim x n block.
  Mat encode(const Mat& raw) const;

  friend bool operator==(const FeatureEncoder& a, const FeatureEncoder& b) {
    return a.window_ == b.window_ && a.energy_kept_ == b.energy_kept_ && a.basis_.rows() == b.basis_.rows() &&
           a.basis_.cols() == b.basis_.cols() && a.basis_ == b.basis_;
  }

 private:
  int window_ = 0;
  Mat basis_;
  double energy_kept_ = 1.0;
};

/// Streaming second-moment accumulator for PCA fitting.
class PcaAccumulator {
 public:
  explicit PcaAccumulator(int dim);
  void add(std::span<const double> sample);
  /// Adds the columns of a dim x n block.
  void add(const Mat& block);
  std::size_t count() const noexcept { return count_; }
  int dim() const noexcept { return static_cast<int>(moment_.rows()); }

  /// Smallest basis whose retained eigenvalue mass reaches `energy`.
  FeatureEncoder finish(double energy, int window) const;

 private:
  Mat moment_;
  std::size_t count_ = 0;
};

/// PCA over raw feature columns (raw_dim x n). Requires n >= raw_dim.
FeatureEncoder fit_pca(const Mat& samples, double energy, int window);
FeatureEncoder fit_pca(const std::vector<std::vector<double>>& samples, double energy, int window);

}  // namespace anchorsr
