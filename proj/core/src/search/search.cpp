#include "anchorsr/search/search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "anchorsr/dict/kmeans.hpp"
#include "anchorsr/error.hpp"

namespace anchorsr {
namespace {

void check_query(const AnchorDictionary& anchors, Eigen::Index dim) {
  if (anchors.size() < 1) throw InvalidInput("lookup: empty dictionary");
  if (dim != anchors.dim()) throw InvalidInput("lookup: feature dimension does not match the anchors");
}

// argmax over a list of candidate anchors; candidates ascend so ties keep the
// lowest index
template <class Range>
int best_of(const Mat& atoms, const Range& candidates, const Eigen::Ref<const Vec>& f) {
  int best = -1;
  double best_val = -std::numeric_limits<double>::infinity();
  for (int j : candidates) {
    const double d = atoms.col(j).dot(f);
    if (d > best_val) {
      best_val = d;
      best = j;
    }
  }
  return best;
}

constexpr Eigen::Index kScoreBlock = Eigen::Index{1} << 20;

int column_argmax(const Mat& s, Eigen::Index c) {
  Eigen::Index arg = 0;
  double best = s(0, c);
  for (Eigen::Index r = 1; r < s.rows(); ++r)
    if (s(r, c) > best) {
      best = s(r, c);
      arg = r;
    }
  return static_cast<int>(arg);
}

}  // namespace

LookupResult linear_lookup(const AnchorDictionary& anchors, const Eigen::Ref<const Vec>& f) {
  check_query(anchors, f.size());
  LookupResult r;
  if (f.squaredNorm() == 0.0) {
    r.zero_feature = true;
    return r;
  }
  r.anchor = argmax_dot(anchors.atoms(), f);
  r.comparisons = static_cast<std::size_t>(anchors.size());
  return r;
}

HierIndex build_hier(const AnchorDictionary& anchors, double c, std::uint64_t seed, int kmeans_iterations) {
  const int k = anchors.size();
  if (k < 4) throw InvalidInput("build_hier: needs at least 4 anchors, got " + std::to_string(k));
  if (!(c > 0.0)) throw InvalidInput("build_hier: expansion factor must be positive");

  const auto groups = static_cast<int>(std::lround(std::sqrt(static_cast<double>(k))));
  const auto length = static_cast<std::size_t>(
      std::min<long>(k, std::max<long>(1, std::lround(c * std::sqrt(static_cast<double>(k))))));

  HierIndex idx;
  idx.expansion = c;
  idx.centroids = spherical_kmeans(anchors.atoms(), groups, kmeans_iterations, seed).centroids;

  const Mat sim = idx.centroids.transpose() * anchors.atoms();  // groups x K
  idx.lists.resize(static_cast<std::size_t>(groups));
  std::vector<int> coverage(static_cast<std::size_t>(k), 0);
  std::vector<int> order(static_cast<std::size_t>(k));
  for (int g = 0; g < groups; ++g) {
    for (int j = 0; j < k; ++j) order[j] = j;
    auto better = [&](int a, int b) { return sim(g, a) > sim(g, b) || (sim(g, a) == sim(g, b) && a < b); };
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(length), order.end(), better);
    auto& list = idx.lists[g];
    list.assign(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(length));
    for (int j : list) ++coverage[j];
  }

  for (int j = 0; j < k; ++j) {
    if (coverage[j] > 0) continue;
    const Eigen::VectorXd col = sim.col(j);
    Eigen::Index g = 0;
    col.maxCoeff(&g);
    auto& list = idx.lists[g];
    int victim = -1;
    for (std::size_t t = 0; t < list.size(); ++t) {
      const int a = list[t];
      if (coverage[a] < 2) continue;
      if (victim < 0 || sim(g, a) < sim(g, list[victim]) ||
          (sim(g, a) == sim(g, list[victim]) && a > list[victim])) {
        victim = static_cast<int>(t);
      }
    }
    if (victim >= 0) {
      --coverage[list[victim]];
      list[victim] = j;
    } else {
      list.push_back(j);
    }
    ++coverage[j];
  }
  for (auto& list : idx.lists) std::ranges::sort(list);
  return idx;
}

LookupResult hier_lookup(const HierIndex& index, const AnchorDictionary& anchors, const Eigen::Ref<const Vec>& f) {
  check_query(anchors, f.size());
  if (index.centroids.rows() != anchors.dim() || index.lists.size() != static_cast<std::size_t>(index.centroids.cols())) {
    throw InvalidInput("hier_lookup: index does not match the anchors");
  }
  LookupResult r;
  if (f.squaredNorm() == 0.0) {
    r.zero_feature = true;
    return r;
  }
  const int g = argmax_dot(index.centroids, f);
  const auto& list = index.lists[g];
  r.anchor = best_of(anchors.atoms(), list, f);
  r.comparisons = static_cast<std::size_t>(index.centroids.cols()) + list.size();
  return r;
}

std::vector<int> linear_lookup_batch(const AnchorDictionary& anchors, const Mat& features, std::size_t* comparisons) {
  check_query(anchors, features.rows());
  const Eigen::Index block = std::clamp<Eigen::Index>(kScoreBlock / anchors.size(), 1, std::max<Eigen::Index>(features.cols(), 1));
  Mat s(anchors.size(), block);
  std::vector<int> out(static_cast<std::size_t>(features.cols()), 0);
  std::size_t count = 0;
  for (Eigen::Index b = 0; b < features.cols(); b += block) {
    const Eigen::Index nb = std::min(block, features.cols() - b);
    s.leftCols(nb).noalias() = anchors.atoms().transpose() * features.middleCols(b, nb);
    for (Eigen::Index c = 0; c < nb; ++c) {
      if (features.col(b + c).squaredNorm() == 0.0) continue;
      out[b + c] = column_argmax(s, c);
      count += static_cast<std::size_t>(anchors.size());
    }
  }
  if (comparisons) *comparisons += count;
  return out;
}

std::vector<int> hier_lookup_batch(const HierIndex& index, const AnchorDictionary& anchors, const Mat& features,
                                   std::size_t* comparisons) {
  check_query(anchors, features.rows());
  const Mat s = index.centroids.transpose() * features;
  std::vector<int> out(static_cast<std::size_t>(features.cols()), 0);
  std::size_t count = 0;
  for (Eigen::Index c = 0; c < features.cols(); ++c) {
    if (features.col(c).squaredNorm() == 0.0) continue;
    const auto& list = index.lists[column_argmax(s, c)];
    out[c] = best_of(anchors.atoms(), list, features.col(c));
    count += static_cast<std::size_t>(index.centroids.cols()) + list.size();
  }
  if (comparisons) *comparisons += count;
  return out;
}

}  // namespace anchorsr
