#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "anchorsr/image/color.hpp"
#include "anchorsr/image/image.hpp"
#include "anchorsr/pipeline/stage.hpp"

namespace anchorsr {

struct ModelFlags {
  bool enhanced = false;         // E: average over the 8 rotations/flips
  bool back_projection = false;  // B
  bool context = false;          // R: banks carry context regressors
  bool self_similarity = false;  // S: add a per-image internal model
  int ibp_iters = 20;
  int internal_anchors = 256;
  int internal_neighborhood = 512;
  double internal_weight = 0.5;

  friend bool operator==(const ModelFlags&, const ModelFlags&) = default;
};

struct SRModel {
  int scale = 3;
  std::vector<SRStage> stages;
  ModelFlags flags;

  /// Throws InvalidInput unless stage 1 has the model scale, later stages
  /// scale 1, and every stage is internally consistent.
  void validate() const;

  friend bool operator==(const SRModel&, const SRModel&) = default;
};

struct CascadeRun {
  Image image;
  std::vector<std::string> warnings;
  std::size_t windows = 0;
  std::size_t comparisons = 0;
  bool internal_used = false;
};

/// Stage 1 magnifies, later stages refine; E wraps every stage, S blends in
/// an internal model of the input, and B runs last. Input is luma.
CascadeRun run_cascade_detail(const SRModel& model, const Image& lr);
inline Image run_cascade(const SRModel& model, const Image& lr) { return run_cascade_detail(model, lr).image; }

/// Luma or RGB input. Color images are super-resolved on Y; chroma is
/// upscaled bicubically and recombined.
CascadeRun super_resolve(const SRModel& model, const Image& lr, YCbCrRange range);

}  // namespace anchorsr
