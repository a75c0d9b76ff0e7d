#pragma once

#include <functional>
#include <vector>

#include "anchorsr/image/image.hpp"

namespace anchorsr {

inline constexpr int kDefaultBackProjectionIters = 20;
inline constexpr double kBackProjectionTolerance = 1e-4;

struct BackProjectionTrace {
  /// RMSE between lr and degrade(hr): the initial value, then one entry per
  /// accepted iteration.
  std::vector<double> residuals;
  bool rejected_increase = false;
};

/// Iterative back projection: hr <- hr + upscale(lr - degrade(hr)). Stops
/// after `iters` steps, once the residual RMSE drops below `tolerance`, or
/// when a step would increase it (that step is discarded).
Image back_project(const Image& hr, const Image& lr, int s, int iters = kDefaultBackProjectionIters,
                   BackProjectionTrace* trace = nullptr, double tolerance = kBackProjectionTolerance);

using SRFunction = std::function<Image(const Image&)>;

/// Runs `core` on the 8 rotations/flips of `lr`, maps each result back and
/// averages them.
Image enhanced_predict(const Image& lr, const SRFunction& core);

/// Pixel-wise weighted average. Weights must be non-negative and sum to 1.
Image combine_predictions(const std::vector<Image>& preds, const std::vector<double>& weights);

}  // namespace anchorsr
