#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anchorsr/image/image.hpp"
#include "anchorsr/patch/pool.hpp"
#include "anchorsr/pipeline/cascade.hpp"

namespace anchorsr {

enum class AnchorMethod { automatic, ksvd, kmeans };
enum class RegressorKind { aplus, anr };

inline constexpr int kKsvdAnchorLimit = 8192;

struct TrainConfig {
  int scale = 3;
  int stages = 1;
  int anchors = 1024;
  std::size_t samples = 500000;
  double lambda = 0.1;
  int neighborhood = 2048;
  RegressorKind regressor = RegressorKind::aplus;
  int anr_neighborhood = 40;

  AnchorMethod anchor_method = AnchorMethod::automatic;  // automatic: K-SVD up to kKsvdAnchorLimit, then k-means
  int sparsity = 3;
  int dictionary_iterations = 20;
  std::size_t dictionary_samples = 100000;

  double pca_energy = 0.99;
  std::size_t pca_samples = 200000;
  int train_stride = 1;
  bool augment = true;
  double flat_threshold = 1e-6;

  bool hier = false;
  double hier_c = 4.0;
  bool context = false;
  int context_neighborhood = 1024;

  int inference_stride = 1;
  bool track_training_error = false;
  std::uint64_t seed = 1;
};

struct StageReport {
  std::size_t pool_windows = 0;
  std::size_t samples = 0;
  int feature_dim = 0;
  double energy_kept = 0.0;
  std::vector<double> dictionary_objective;
  int ill_conditioned = 0;
  /// Mean PSNR of this stage's output over the training images; NaN when not computed.
  double training_psnr = 0.0;
};

struct TrainedModel {
  SRModel model;
  std::vector<StageReport> reports;
};

/// Trains one stage on prepared data. `scale` is the magnification the stage
/// applies at inference (the data bases must already be at target size).
SRStage train_stage(const StageData& data, int scale, const TrainConfig& cfg, std::uint64_t seed,
                    StageReport* report = nullptr);

/// Trains a cascade from luma HR images. Throws DataError when the images
/// yield too few windows for the requested dictionary.
TrainedModel train_cascade(const std::vector<Image>& hr_images, const TrainConfig& cfg);

/// A small A+ stage trained on the input's own cross-scale pairs
/// (degrade(lr) -> lr). Throws DataError when lr is too small.
SRStage internal_model(const Image& lr, int scale, const TrainConfig& cfg);

/// Training settings for the per-image internal model of `model`.
TrainConfig internal_config(const SRModel& model);

}  // namespace anchorsr
