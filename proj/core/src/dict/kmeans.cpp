#include "anchorsr/dict/kmeans.hpp"

#include <algorithm>
#include <string>

#include "anchorsr/error.hpp"
#include "anchorsr/patch/sampling.hpp"

namespace anchorsr {

int argmax_dot(const Mat& unit_vectors, const Eigen::Ref<const Vec>& v) {
  int best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < unit_vectors.cols(); ++j) {
    const double d = unit_vectors.col(j).dot(v);
    if (d > best_val) {
      best_val = d;
      best = static_cast<int>(j);
    }
  }
  return best;
}

KmeansResult spherical_kmeans(const Mat& points, int k, int max_iterations, std::uint64_t seed) {
  const Eigen::Index n = points.cols();
  if (k < 1) throw InvalidInput("kmeans: k must be positive");
  if (n < k) throw DataError("kmeans: " + std::to_string(n) + " points cannot form " + std::to_string(k) + " clusters");

  Mat unit = points;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double nrm = unit.col(i).norm();
    if (nrm > 0.0) unit.col(i) /= nrm;
  }

  KmeansResult res;
  const auto init = sample_indices(static_cast<std::size_t>(n), static_cast<std::size_t>(k), seed);
  res.centroids.resize(points.rows(), k);
  for (int j = 0; j < k; ++j) res.centroids.col(j) = unit.col(static_cast<Eigen::Index>(init[j]));
  res.assignment.assign(static_cast<std::size_t>(n), -1);

  constexpr Eigen::Index kBlock = 4096;
  std::vector<double> score(static_cast<std::size_t>(n), 0.0);
  for (int it = 0; it < std::max(1, max_iterations); ++it) {
    bool changed = false;
    for (Eigen::Index b = 0; b < n; b += kBlock) {
      const Eigen::Index nb = std::min(kBlock, n - b);
      const Mat s = res.centroids.transpose() * unit.middleCols(b, nb);
      for (Eigen::Index c = 0; c < nb; ++c) {
        Eigen::Index arg = 0;
        double best = s(0, c);
        for (Eigen::Index j = 1; j < s.rows(); ++j)
          if (s(j, c) > best) {
            best = s(j, c);
            arg = j;
          }
        score[b + c] = best;
        if (res.assignment[b + c] != arg) {
          res.assignment[b + c] = static_cast<int>(arg);
          changed = true;
        }
      }
    }
    res.iterations = it + 1;

    Mat sums = Mat::Zero(points.rows(), k);
    std::vector<int> members(static_cast<std::size_t>(k), 0);
    for (Eigen::Index i = 0; i < n; ++i) {
      sums.col(res.assignment[i]) += unit.col(i);
      ++members[res.assignment[i]];
    }
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < k; ++j) {
      const double nrm = sums.col(j).norm();
      if (members[j] > 0 && nrm > 0.0) {
        res.centroids.col(j) = sums.col(j) / nrm;
        continue;
      }
      // empty (or cancelled) cluster: take the worst-fitting point
      Eigen::Index worst = -1;
      for (Eigen::Index i = 0; i < n; ++i)
        if (!used[i] && (worst < 0 || score[i] < score[worst])) worst = i;
      if (worst >= 0) {
        used[worst] = 1;
        res.centroids.col(j) = unit.col(worst);
        changed = true;
      }
    }
    if (!changed) break;
  }
  return res;
}

}  // namespace anchorsr
