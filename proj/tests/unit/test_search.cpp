#include <doctest.h>

#include <cmath>
#include <set>

#include "anchorsr/error.hpp"
#include "anchorsr/search/search.hpp"
#include "support.hpp"

using namespace anchorsr;

namespace {

int brute_nearest(const AnchorDictionary& d, const Vec& f) {
  const Vec u = f / f.norm();
  int best = 0;
  for (int j = 1; j < d.size(); ++j)
    if (d.atom(j).dot(u) > d.atom(best).dot(u)) best = j;
  return best;
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("linear lookup finds the most correlated anchor") {
  const AnchorDictionary d(test::random_unit_columns(10, 64, 1));
  const Mat q = test::random_matrix(10, 200, 2);
  for (int i = 0; i < 200; ++i) {
    const LookupResult r = linear_lookup(d, q.col(i));
    CHECK(r.anchor == brute_nearest(d, q.col(i)));
    CHECK(r.comparisons == 64u);
    CHECK(!r.zero_feature);
  }
}

TEST_CASE("zero query maps to anchor 0 with a flag") {
  const AnchorDictionary d(test::random_unit_columns(4, 8, 1));
  const LookupResult r = linear_lookup(d, Vec::Zero(4));
  CHECK(r.zero_feature);
  CHECK(r.anchor == 0);
  CHECK_THROWS_AS(linear_lookup(d, Vec::Zero(5)), InvalidInput);
}

TEST_CASE("positive scaling of the query keeps the anchor") {
  const AnchorDictionary d(test::random_unit_columns(10, 128, 3));
  const HierIndex idx = build_hier(d, 4.0, 1);
  const Mat q = test::random_matrix(10, 100, 4);
  for (int i = 0; i < 100; ++i) {
    const int a = linear_lookup(d, q.col(i)).anchor;
    const int h = hier_lookup(idx, d, q.col(i)).anchor;
    for (double c : {0.5, 4.0, 1e-3, 1e6}) {
      CHECK(linear_lookup(d, c * q.col(i)).anchor == a);
      CHECK(hier_lookup(idx, d, c * q.col(i)).anchor == h);
    }
  }
}

TEST_CASE("ties go to the lowest anchor index") {
  Mat atoms = test::random_unit_columns(5, 6, 5);
  atoms.col(4) = atoms.col(1);
  const AnchorDictionary d = AnchorDictionary::from_unit_atoms(atoms);
  CHECK(linear_lookup(d, atoms.col(1)).anchor == 1);
}

TEST_CASE("index shape for K = 1024, c = 4") {
  const AnchorDictionary d(test::random_unit_columns(30, 1024, 6));
  const HierIndex idx = build_hier(d, 4.0, 7);
  CHECK(idx.centroids.cols() == 32);
  CHECK(idx.lists.size() == 32u);
  std::set<int> covered;
  for (const auto& list : idx.lists) {
    CHECK(list.size() >= 128u);
    CHECK(std::is_sorted(list.begin(), list.end()));
    CHECK(std::set<int>(list.begin(), list.end()).size() == list.size());
    covered.insert(list.begin(), list.end());
  }
  CHECK(covered.size() == 1024u);
  for (int c = 0; c < 32; ++c) CHECK(std::abs(idx.centroids.col(c).norm() - 1.0) <= 1e-12);

  const Mat q = test::random_matrix(30, 500, 8);
  std::size_t hits = 0;
  for (int i = 0; i < 500; ++i) {
    const LookupResult r = hier_lookup(idx, d, q.col(i));
    CHECK(r.comparisons <= static_cast<std::size_t>(32 + 4 * 32 + 8));
    hits += r.anchor == linear_lookup(d, q.col(i)).anchor ? 1 : 0;
  }
  MESSAGE("hierarchical agreement with exhaustive search on random queries: " << hits << "/500");
}

TEST_CASE("saturated index equals exhaustive search exactly") {
  const AnchorDictionary d(test::random_unit_columns(8, 100, 9));
  const HierIndex idx = build_hier(d, 10.0, 3);  // c sqrt(K) = K
  for (const auto& list : idx.lists) CHECK(list.size() == 100u);
  const Mat q = test::random_matrix(8, 300, 10);
  for (int i = 0; i < 300; ++i) CHECK(hier_lookup(idx, d, q.col(i)).anchor == linear_lookup(d, q.col(i)).anchor);
}

TEST_CASE("every anchor is reachable even when lists are short") {
  const AnchorDictionary d(test::random_unit_columns(6, 400, 11));
  const HierIndex idx = build_hier(d, 0.5, 12);
  std::set<int> covered;
  for (const auto& list : idx.lists) covered.insert(list.begin(), list.end());
  CHECK(covered.size() == 400u);
  int self = 0;
  for (int j = 0; j < 400; ++j) self += hier_lookup(idx, d, d.atom(j)).anchor == j ? 1 : 0;
  MESSAGE("anchors recovered from their own atom: " << self << "/400");
}

TEST_CASE("batch lookups match single lookups") {
  const AnchorDictionary d(test::random_unit_columns(12, 256, 13));
  const HierIndex idx = build_hier(d, 4.0, 14);
  Mat q = test::random_matrix(12, 150, 15);
  q.col(7).setZero();
  std::size_t lc = 0, hc = 0;
  const auto lin = linear_lookup_batch(d, q, &lc);
  const auto hier = hier_lookup_batch(idx, d, q, &hc);
  std::size_t lc1 = 0, hc1 = 0;
  for (int i = 0; i < 150; ++i) {
    const LookupResult l = linear_lookup(d, q.col(i));
    const LookupResult h = hier_lookup(idx, d, q.col(i));
    CHECK(lin[i] == l.anchor);
    CHECK(hier[i] == h.anchor);
    lc1 += l.comparisons;
    hc1 += h.comparisons;
  }
  CHECK(lin[7] == 0);
  CHECK(lc == lc1);
  CHECK(hc == hc1);
}

TEST_CASE("index needs at least four anchors") {
  CHECK_THROWS_AS(build_hier(AnchorDictionary(test::random_unit_columns(3, 3, 1)), 4.0, 1), InvalidInput);
}

TEST_CASE("index construction is deterministic") {
  const AnchorDictionary d(test::random_unit_columns(8, 200, 16));
  CHECK(build_hier(d, 4.0, 5) == build_hier(d, 4.0, 5));
}

}
