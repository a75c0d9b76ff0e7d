#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "anchorsr/error.hpp"
#include "anchorsr/regress/bank.hpp"
#include "anchorsr/regress/ridge.hpp"
#include "anchorsr/regress/select.hpp"
#include "support.hpp"

using namespace anchorsr;

namespace {

TrainingSet make_pool(const Mat& features, const Mat& targets) {
  TrainingSet set;
  set.features = features.cast<float>();
  set.targets = targets.cast<float>();
  return set;
}

// argmin_b ||y - Nl b||^2 + lambda ||b||^2 through the sample-space normal
// equations, solved densely.
Vec ridge_oracle(const Mat& nl, const Mat& nh, double lambda, const Vec& y) {
  const Mat a = nl.transpose() * nl + lambda * Mat::Identity(nl.cols(), nl.cols());
  const Vec beta = a.partialPivLu().solve(nl.transpose() * y);
  return nh * beta;
}

std::vector<std::uint32_t> top_oracle(const std::vector<float>& s, std::size_t k) {
  std::vector<std::uint32_t> idx(s.size());
  std::iota(idx.begin(), idx.end(), 0u);
  std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return s[a] > s[b]; });
  idx.resize(std::min(k, s.size()));
  std::ranges::sort(idx);
  return idx;
}

}  // namespace

TEST_SUITE("regress") {

TEST_CASE("identity system with vanishing lambda") {
  const Mat id = Mat::Identity(6, 6);
  const RidgeResult r = ridge_project(id, id, 1e-12);
  CHECK((r.projection - id).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("single pair closed form") {
  const Mat nl = test::random_matrix(5, 1, 1);
  const Mat nh = test::random_matrix(7, 1, 2);
  const RidgeResult r = ridge_project(nl, nh, 1.0);
  const Mat expect = nh * nl.transpose() / (nl.squaredNorm() + 1.0);
  CHECK((r.projection - expect).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("projection matches the direct minimizer") {
  for (auto [d, m] : {std::pair{30, 2048}, std::pair{30, 20}, std::pair{12, 12}}) {
    const Mat nl = test::random_matrix(d, m, 3);
    const Mat nh = test::random_matrix(81, m, 4);
    const RidgeResult r = ridge_project(nl, nh, 0.1);
    CHECK(r.projection.rows() == 81);
    CHECK(r.projection.cols() == d);
    CHECK(!r.ill_conditioned);
    for (int t = 0; t < 3; ++t) {
      const Vec y = test::random_matrix(d, 1, 10 + t).col(0);
      CHECK((r.projection * y - ridge_oracle(nl, nh, 0.1, y)).cwiseAbs().maxCoeff() <= 1e-6);
    }
  }
}

TEST_CASE("projection norm shrinks as lambda grows") {
  const Mat nl = test::random_matrix(10, 40, 5);
  const Mat nh = test::random_matrix(9, 40, 6);
  double prev = 1e300;
  for (double lambda : {0.1, 1.0, 10.0, 100.0, 1e4, 1e8}) {
    const double n = ridge_project(nl, nh, lambda).projection.norm();
    CHECK(n < prev);
    prev = n;
  }
  CHECK(prev < 1e-4);
}

TEST_CASE("ridge input validation and conditioning flag") {
  CHECK_THROWS_AS(ridge_project(Mat::Identity(3, 3), Mat::Identity(3, 4), 0.1), InvalidInput);
  CHECK_THROWS_AS(ridge_project(Mat::Identity(3, 3), Mat::Identity(3, 3), 0.0), InvalidInput);
  Mat nl = Mat::Identity(3, 3);
  nl(0, 0) = 1e7;
  const RidgeResult r = ridge_project(nl, Mat::Identity(2, 3), 1e-3);
  CHECK(r.ill_conditioned);
  CHECK(r.condition > kIllConditioned);
  CHECK(r.projection.allFinite());
}

TEST_CASE("top-k selection matches a stable sort") {
  const Mat m = test::random_matrix(1, 5000, 7);
  std::vector<float> s(5000);
  for (int i = 0; i < 5000; ++i) s[i] = static_cast<float>(std::round(m(0, i) * 10.0));  // many ties
  for (std::size_t k : {1u, 10u, 777u, 5000u, 6000u}) CHECK(select_top(s, k) == top_oracle(s, k));
}

TEST_CASE("top-k selection on large inputs") {
  const Mat m = test::random_matrix(1, 200000, 8);
  std::vector<float> s(200000);
  for (int i = 0; i < 200000; ++i) s[i] = static_cast<float>(m(0, i));
  s[5] = s[7] = 100.0f;
  for (std::size_t k : {2u, 2048u, 20000u}) CHECK(select_top(s, k) == top_oracle(s, k));
}

TEST_CASE("zero bank") {
  const AnchorDictionary d(test::random_unit_columns(5, 8, 1));
  const RegressorBank b = zero_bank(d, 81, true);
  CHECK(b.projections.size() == 32u);
  CHECK(b.context_count() == 4);
  CHECK(b.target_dim() == 81);
  for (const Mat& p : b.projections) CHECK(p.isZero());
}

TEST_CASE("A+ bank: completeness and per-anchor oracle") {
  const AnchorDictionary d(test::random_unit_columns(6, 12, 2));
  const Mat f = test::random_matrix(6, 500, 3);
  const Mat h = test::random_matrix(9, 500, 4);
  const TrainingSet pool = make_pool(f, h);
  const RegressorBank b = train_bank_aplus(d, pool, 50, 0.1);
  REQUIRE(b.projections.size() == 12u);
  CHECK(b.neighborhood_size == 50);
  CHECK_NOTHROW(b.validate());
  for (const Mat& p : b.projections) {
    CHECK(p.rows() == 9);
    CHECK(p.cols() == 6);
    CHECK(p.allFinite());
  }
  // oracle for anchor 3: the 50 samples with the largest normalized correlation
  const Mat fp = pool.features.cast<double>();
  const Mat hp = pool.targets.cast<double>();
  std::vector<std::pair<double, int>> corr;
  for (int i = 0; i < 500; ++i) corr.push_back({-d.atom(3).dot(fp.col(i)) / fp.col(i).norm(), i});
  std::ranges::sort(corr);
  Mat nl(6, 50), nh(9, 50);
  for (int i = 0; i < 50; ++i) {
    const double inv = 1.0 / fp.col(corr[i].second).norm();
    nl.col(i) = fp.col(corr[i].second) * inv;
    nh.col(i) = hp.col(corr[i].second) * inv;
  }
  const Mat expect = nh * (nl.transpose() * nl + 0.1 * Mat::Identity(50, 50)).inverse() * nl.transpose();
  CHECK((b.projection(3) - expect).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("A+ on a pool of atom copies reconstructs the atoms' HR counterparts") {
  const AnchorDictionary d(test::random_unit_columns(6, 8, 5));
  const Mat hr_atoms = test::random_matrix(9, 8, 6);
  const int copies = 50;
  Mat f(6, 8 * copies), h(9, 8 * copies);
  for (int i = 0; i < 8 * copies; ++i) {
    f.col(i) = d.atom(i % 8);
    h.col(i) = hr_atoms.col(i % 8);
  }
  const RegressorBank b = train_bank_aplus(d, make_pool(f, h), copies, 0.1);
  for (int j = 0; j < 8; ++j) {
    const Vec out = b.projection(j) * d.atom(j);
    CHECK((out - hr_atoms.col(j) * (copies / (copies + 0.1))).cwiseAbs().maxCoeff() <= 1e-5);
    CHECK((out - hr_atoms.col(j)).norm() <= 0.01 * hr_atoms.col(j).norm());
  }
}

TEST_CASE("A+ neighborhood shrinks to the pool") {
  const AnchorDictionary d(test::random_unit_columns(4, 3, 7));
  const RegressorBank b = train_bank_aplus(d, make_pool(test::random_matrix(4, 20, 8), test::random_matrix(4, 20, 9)), 2048, 0.1);
  CHECK(b.neighborhood_size == 20);
}

TEST_CASE("ANR: completeness and permutation equivariance") {
  const Mat atoms = test::random_unit_columns(6, 16, 10);
  const TrainingSet pool = make_pool(test::random_matrix(6, 400, 11), test::random_matrix(9, 400, 12));
  AnrOptions opt;
  opt.neighborhood = 5;
  const RegressorBank b = train_bank_anr(AnchorDictionary(atoms), pool, opt);
  REQUIRE(b.projections.size() == 16u);
  for (const Mat& p : b.projections) CHECK(p.allFinite());

  std::vector<int> perm(16);
  std::iota(perm.begin(), perm.end(), 0);
  std::reverse(perm.begin(), perm.end());
  std::swap(perm[2], perm[9]);
  Mat permuted(6, 16);
  for (int j = 0; j < 16; ++j) permuted.col(j) = atoms.col(perm[j]);
  const RegressorBank bp = train_bank_anr(AnchorDictionary(permuted), pool, opt);
  for (int j = 0; j < 16; ++j) CHECK((bp.projection(j) - b.projection(perm[j])).cwiseAbs().maxCoeff() <= 1e-8);
  CHECK_THROWS_AS(train_bank_anr(AnchorDictionary(atoms.leftCols(1)), pool, opt), InvalidInput);
}

TEST_CASE("context bank with identical contexts gives equal regressors") {
  const AnchorDictionary d(test::random_unit_columns(6, 5, 13));
  TrainingSet pool = make_pool(test::random_matrix(6, 300, 14), test::random_matrix(9, 300, 15));
  pool.contexts = MatF::Ones(6, 300);
  ContextOptions opt;
  opt.neighborhood = 60;
  const RegressorBank b = train_bank_context(d, pool, opt);
  REQUIRE(b.contexts.has_value());
  CHECK(b.contexts->centroids.cols() == 4);
  CHECK(b.projections.size() == 20u);
  for (int j = 0; j < 5; ++j)
    for (int c = 1; c < 4; ++c) CHECK((b.projection(j, c) - b.projection(j, 0)).cwiseAbs().maxCoeff() <= 1e-9);
}

TEST_CASE("context bank: four unit centroids and weighted selection") {
  const AnchorDictionary d(test::random_unit_columns(6, 5, 16));
  TrainingSet pool = make_pool(test::random_matrix(6, 800, 17), test::random_matrix(9, 800, 18));
  pool.contexts = test::random_matrix(6, 800, 19).cast<float>();
  ContextOptions opt;
  opt.neighborhood = 100;
  const RegressorBank b = train_bank_context(d, pool, opt);
  for (int c = 0; c < 4; ++c) CHECK(std::abs(b.contexts->centroids.col(c).norm() - 1.0) <= 1e-12);
  CHECK(b.contexts->weight_anchor == 10.0);
  CHECK(b.contexts->weight_context == 1.0);
  CHECK_NOTHROW(b.validate());
  CHECK(!(b.projection(0, 0) - b.projection(0, 1)).isZero());
  CHECK_THROWS_AS(train_bank_context(d, make_pool(test::random_matrix(6, 50, 1), test::random_matrix(9, 50, 2)), opt),
                  InvalidInput);
}

TEST_CASE("nearest context centroid") {
  ContextModel m;
  m.centroids = Mat::Identity(4, 4);
  Vec v(4);
  v << 0.1, -2.0, 0.3, 0.2;
  CHECK(m.nearest(v) == 2);
}

TEST_CASE("normalized pool") {
  const TrainingSet pool = make_pool(test::random_matrix(5, 10, 20), test::random_matrix(3, 10, 21));
  const NormalizedPool np = normalize_pool(pool);
  for (int i = 0; i < 10; ++i) {
    CHECK(np.features.col(i).cast<double>().norm() == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(np.inv_norm[i] * pool.features.col(i).norm() == doctest::Approx(1.0).epsilon(1e-6));
  }
}

}
