#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "anchorsr/dict/dictionary.hpp"
#include "anchorsr/linalg.hpp"

namespace anchorsr {

struct LookupResult {
  int anchor = 0;
  std::size_t comparisons = 0;  // dot products evaluated
  bool zero_feature = false;    // query had zero norm; anchor 0 by convention
};

/// Exact nearest anchor by correlation: argmax_j <f/||f||, a_j>, ties to the
/// lowest index. (The positive normalization does not change the argmax, so
/// it is not materialized.)
LookupResult linear_lookup(const AnchorDictionary& anchors, const Eigen::Ref<const Vec>& f);

/// Two-layer search structure over the anchors: round(sqrt(K)) spherical
/// k-means centroids, each owning the round(c sqrt(K)) anchors most
/// correlated with it (all anchors when that exceeds K).
struct HierIndex {
  Mat centroids;                       // dim x round(sqrt(K)), unit norm
  std::vector<std::vector<int>> lists; // per centroid, ascending anchor ids
  double expansion = 4.0;              // c

  std::size_t list_length() const noexcept { return lists.empty() ? 0 : lists.front().size(); }

  friend bool operator==(const HierIndex& a, const HierIndex& b) {
    return a.expansion == b.expansion && a.lists == b.lists && a.centroids.rows() == b.centroids.rows() &&
           a.centroids.cols() == b.centroids.cols() && a.centroids == b.centroids;
  }
};

inline constexpr int kHierKmeansIterations = 100;

/// Builds the index. Every anchor is guaranteed to appear in at least one
/// list: an anchor left out by the top-c sqrt(K) rule replaces, in its most
/// correlated centroid's list, the weakest member that is covered elsewhere.
HierIndex build_hier(const AnchorDictionary& anchors, double c, std::uint64_t seed,
                     int kmeans_iterations = kHierKmeansIterations);

/// Most correlated centroid first, then the best anchor in its list.
LookupResult hier_lookup(const HierIndex& index, const AnchorDictionary& anchors, const Eigen::Ref<const Vec>& f);

/// Column-wise lookups. When `comparisons` is non-null the total number of
/// dot products is added to it.
std::vector<int> linear_lookup_batch(const AnchorDictionary& anchors, const Mat& features,
                                     std::size_t* comparisons = nullptr);
std::vector<int> hier_lookup_batch(const HierIndex& index, const AnchorDictionary& anchors, const Mat& features,
                                   std::size_t* comparisons = nullptr);

}  // namespace anchorsr
