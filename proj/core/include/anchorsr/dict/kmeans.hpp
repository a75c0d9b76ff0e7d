#pragma once

#include <cstdint>
#include <vector>

#include "anchorsr/linalg.hpp"

namespace anchorsr {

struct KmeansResult {
  Mat centroids;                // dim x k, unit norm columns
  std::vector<int> assignment;  // per point
  int iterations = 0;
};

/// Spherical k-means: points are l2-normalized, assigned to the centroid of
/// largest dot product (ties to the lowest index), and centroids are the
/// normalized means of their members. Empty clusters are re-seeded with the
/// point least correlated with its current centroid. Initial centroids are
/// `k` distinct random points drawn with `seed`.
KmeansResult spherical_kmeans(const Mat& points, int k, int max_iterations, std::uint64_t seed);

/// Index of the column of `unit_vectors` with the largest dot product with
/// `v`; ties resolve to the lowest index.
int argmax_dot(const Mat& unit_vectors, const Eigen::Ref<const Vec>& v);

}  // namespace anchorsr
