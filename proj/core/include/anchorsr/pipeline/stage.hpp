#pragma once

#include <cstddef>
#include <optional>

#include "anchorsr/image/image.hpp"
#include "anchorsr/patch/features.hpp"
#include "anchorsr/regress/bank.hpp"
#include "anchorsr/search/search.hpp"

namespace anchorsr {

/// One trained anchored-regression step. The first stage of a model
/// magnifies by the model scale; refinement stages work at scale 1.
struct SRStage {
  FeatureEncoder encoder;
  RegressorBank bank;
  std::optional<HierIndex> index;
  int scale = 3;
  int stride = 1;
  /// Downscale factor of the context image; 0 when the bank has no contexts.
  int context_scale = 0;

  int window() const noexcept { return encoder.window(); }
  /// Throws InvalidInput when encoder, bank, index and context settings disagree.
  void validate() const;

  friend bool operator==(const SRStage&, const SRStage&) = default;
};

struct StageRun {
  Image image;
  bool too_small = false;        // no window fits; image is the bicubic base
  std::size_t windows = 0;
  std::size_t comparisons = 0;   // anchor search dot products
};

/// Sums residual windows and divides by the per-pixel window count.
class OverlapAccumulator {
 public:
  OverlapAccumulator(int width, int height);

  /// Adds a row-major window x window residual with top-left (x0, y0).
  void add(int x0, int y0, int window, const double* residual);
  int count(int x, int y) const noexcept { return counts_[static_cast<std::size_t>(y) * width_ + x]; }
  /// base + averaged residual; pixels no window touched keep the base value.
  Image resolve(const Image& base) const;

 private:
  int width_;
  int height_;
  std::vector<double> sums_;
  std::vector<int> counts_;
};

StageRun run_stage(const SRStage& stage, const Image& input);
inline Image sr_stage(const SRStage& stage, const Image& input) { return run_stage(stage, input).image; }

}  // namespace anchorsr
