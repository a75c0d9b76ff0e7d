#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "anchorsr/dict/dictionary.hpp"
#include "anchorsr/linalg.hpp"
#include "anchorsr/patch/pool.hpp"

namespace anchorsr {

inline constexpr int kContextCount = 4;

/// Context centroids for context-aware regressor selection, plus the
/// anchor:context weighting used when picking training neighborhoods.
struct ContextModel {
  Mat centroids;  // feature dim x 4, unit norm
  double weight_anchor = 10.0;
  double weight_context = 1.0;

  /// Nearest centroid by correlation (ties to the lowest index).
  int nearest(const Eigen::Ref<const Vec>& context_feature) const;

  friend bool operator==(const ContextModel& a, const ContextModel& b) {
    return a.weight_anchor == b.weight_anchor && a.weight_context == b.weight_context &&
           a.centroids.rows() == b.centroids.rows() && a.centroids.cols() == b.centroids.cols() &&
           a.centroids == b.centroids;
  }
};

/// Per-anchor (or per anchor x context) projection matrices mapping a
/// feature vector to an HR residual patch.
struct RegressorBank {
  AnchorDictionary anchors;
  /// Row-major over (anchor, context): index = anchor * context_count() + context.
  std::vector<Mat> projections;
  double lambda = 0.1;
  int neighborhood_size = 0;
  std::optional<ContextModel> contexts;
  /// Regressors whose regularized system exceeded the conditioning limit.
  int ill_conditioned = 0;

  int size() const noexcept { return anchors.size(); }
  int context_count() const noexcept { return contexts ? kContextCount : 1; }
  int feature_dim() const noexcept { return anchors.dim(); }
  int target_dim() const noexcept { return projections.empty() ? 0 : static_cast<int>(projections.front().rows()); }
  const Mat& projection(int anchor, int context = 0) const {
    return projections[static_cast<std::size_t>(anchor) * context_count() + context];
  }

  /// Checks the structural invariants; throws InvalidInput on violation.
  void validate() const;

  friend bool operator==(const RegressorBank&, const RegressorBank&);
};

/// Bank whose projections are all zero (the pipeline then reduces to bicubic).
RegressorBank zero_bank(const AnchorDictionary& anchors, int target_dim, bool with_contexts = false);

/// A+: each anchor regresses from the `neighborhood` training samples most
/// correlated with it.
RegressorBank train_bank_aplus(const AnchorDictionary& anchors, const TrainingSet& pool, int neighborhood,
                               double lambda);

struct AnrOptions {
  double lambda = 0.1;
  int neighborhood = 40;  // nearest atoms per anchor
  int sparsity = 3;       // OMP sparsity when estimating atom HR counterparts
};

/// ANR: each anchor regresses from its nearest atoms. Atom HR counterparts
/// come from a ridge fit of the pool's HR residuals on their sparse codes.
RegressorBank train_bank_anr(const AnchorDictionary& anchors, const TrainingSet& pool, const AnrOptions& opt);

/// HR counterparts of the atoms (target_dim x K), as used by ANR.
Mat anr_hr_atoms(const AnchorDictionary& anchors, const TrainingSet& pool, const AnrOptions& opt);

struct ContextOptions {
  double lambda = 0.1;
  int neighborhood = 1024;
  int kmeans_iterations = 100;
  std::uint64_t seed = 7;
  double weight_anchor = 10.0;
  double weight_context = 1.0;
};

/// Context reasoning: 4 context centroids by spherical k-means over the
/// pool's context features, then one regressor per (anchor, context) trained
/// on the samples maximizing (wa * sim_anchor + wc * sim_context) / (wa + wc).
RegressorBank train_bank_context(const AnchorDictionary& anchors, const TrainingSet& pool, const ContextOptions& opt);

/// Column-normalized copy of the pool features plus the per-column scale
/// (1 / ||f||) that was applied; HR targets regress consistently when scaled
/// by the same factor.
struct NormalizedPool {
  MatF features;
  std::vector<float> inv_norm;
};
NormalizedPool normalize_pool(const TrainingSet& pool);

}  // namespace anchorsr
