#include "anchorsr/regress/bank.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "anchorsr/dict/kmeans.hpp"
#include "anchorsr/dict/omp.hpp"
#include "anchorsr/error.hpp"
#include "anchorsr/regress/ridge.hpp"
#include "anchorsr/regress/select.hpp"

namespace anchorsr {
namespace {

// Score matrices are processed in anchor blocks holding about this many floats.
using RowMatF = Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

constexpr std::size_t kScoreBudget = std::size_t{1} << 26;

Eigen::Index anchor_block(std::size_t pool_size) {
  return static_cast<Eigen::Index>(std::clamp<std::size_t>(kScoreBudget / std::max<std::size_t>(pool_size, 1), 1, 256));
}

void check_pool(const AnchorDictionary& anchors, const TrainingSet& pool) {
  if (anchors.size() < 1) throw InvalidInput("regressor training: empty dictionary");
  if (pool.size() == 0) throw DataError("regressor training: empty training pool");
  if (pool.features.rows() != anchors.dim()) {
    throw InvalidInput("regressor training: pool feature dim " + std::to_string(pool.features.rows()) +
                       " does not match dictionary dim " + std::to_string(anchors.dim()));
  }
}

RidgeResult fit_selected(const NormalizedPool& np, const TrainingSet& pool, const std::vector<std::uint32_t>& sel,
                         double lambda) {
  const auto m = static_cast<Eigen::Index>(sel.size());
  Mat nl(np.features.rows(), m);
  Mat nh(pool.targets.rows(), m);
  for (Eigen::Index c = 0; c < m; ++c) {
    const auto i = static_cast<Eigen::Index>(sel[c]);
    nl.col(c) = np.features.col(i).cast<double>();
    nh.col(c) = pool.targets.col(i).cast<double>() * static_cast<double>(np.inv_norm[i]);
  }
  return ridge_project(nl, nh, lambda);
}

}  // namespace

int ContextModel::nearest(const Eigen::Ref<const Vec>& context_feature) const {
  return argmax_dot(centroids, context_feature);
}

void RegressorBank::validate() const {
  const auto expected = static_cast<std::size_t>(size()) * context_count();
  if (projections.size() != expected) throw InvalidInput("regressor bank: wrong number of projections");
  const int q = target_dim();
  for (const Mat& p : projections) {
    if (p.rows() != q || p.cols() != feature_dim()) throw InvalidInput("regressor bank: projection has wrong shape");
    if (!p.allFinite()) throw InvalidInput("regressor bank: non-finite projection");
  }
  if (contexts) {
    if (contexts->centroids.cols() != kContextCount || contexts->centroids.rows() != feature_dim()) {
      throw InvalidInput("regressor bank: context model must hold 4 centroids of feature dimension");
    }
    for (Eigen::Index c = 0; c < contexts->centroids.cols(); ++c)
      if (std::abs(contexts->centroids.col(c).norm() - 1.0) > 1e-8)
        throw InvalidInput("regressor bank: context centroid is not unit norm");
  }
}

bool operator==(const RegressorBank& a, const RegressorBank& b) {
  if (!(a.anchors == b.anchors) || a.lambda != b.lambda || a.neighborhood_size != b.neighborhood_size ||
      a.contexts != b.contexts || a.projections.size() != b.projections.size() ||
      a.ill_conditioned != b.ill_conditioned) {
    return false;
  }
  for (std::size_t i = 0; i < a.projections.size(); ++i) {
    const Mat& pa = a.projections[i];
    const Mat& pb = b.projections[i];
    if (pa.rows() != pb.rows() || pa.cols() != pb.cols() || pa != pb) return false;
  }
  return true;
}

NormalizedPool normalize_pool(const TrainingSet& pool) {
  NormalizedPool np;
  np.features = pool.features;
  np.inv_norm.resize(pool.size());
  for (Eigen::Index i = 0; i < np.features.cols(); ++i) {
    const float n = np.features.col(i).norm();
    const float inv = n > 0.0f ? 1.0f / n : 0.0f;
    np.features.col(i) *= inv;
    np.inv_norm[i] = inv;
  }
  return np;
}

RegressorBank zero_bank(const AnchorDictionary& anchors, int target_dim, bool with_contexts) {
  RegressorBank bank;
  bank.anchors = anchors;
  if (with_contexts) {
    ContextModel cm;
    cm.centroids = Mat::Zero(anchors.dim(), kContextCount);
    for (int c = 0; c < kContextCount; ++c) cm.centroids(c % anchors.dim(), c) = 1.0;
    bank.contexts = cm;
  }
  bank.projections.assign(static_cast<std::size_t>(anchors.size()) * bank.context_count(),
                          Mat::Zero(target_dim, anchors.dim()));
  return bank;
}

RegressorBank train_bank_aplus(const AnchorDictionary& anchors, const TrainingSet& pool, int neighborhood,
                               double lambda) {
  check_pool(anchors, pool);
  if (neighborhood < 1) throw InvalidInput("A+: neighborhood must be positive");
  const std::size_t nbhd = std::min<std::size_t>(static_cast<std::size_t>(neighborhood), pool.size());

  const NormalizedPool np = normalize_pool(pool);
  const MatF atoms = anchors.atoms().cast<float>();
  RegressorBank bank;
  bank.anchors = anchors;
  bank.lambda = lambda;
  bank.neighborhood_size = static_cast<int>(nbhd);
  bank.projections.resize(static_cast<std::size_t>(anchors.size()));

  const Eigen::Index block = std::min<Eigen::Index>(anchor_block(pool.size()), anchors.size());
  // row-major so each anchor's scores are contiguous
  RowMatF scores(block, np.features.cols());
  int ill = 0;
  for (Eigen::Index b = 0; b < anchors.size(); b += block) {
    const Eigen::Index nb = std::min<Eigen::Index>(block, anchors.size() - b);
    scores.topRows(nb).noalias() = atoms.middleCols(b, nb).transpose() * np.features;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : ill)
    for (Eigen::Index r = 0; r < nb; ++r) {
      const auto sel = select_top(std::span<const float>(scores.row(r).data(), pool.size()), nbhd);
      RidgeResult fit = fit_selected(np, pool, sel, lambda);
      ill += fit.ill_conditioned ? 1 : 0;
      bank.projections[b + r] = std::move(fit.projection);
    }
  }
  bank.ill_conditioned = ill;
  return bank;
}

Mat anr_hr_atoms(const AnchorDictionary& anchors, const TrainingSet& pool, const AnrOptions& opt) {
  check_pool(anchors, pool);
  const NormalizedPool np = normalize_pool(pool);
  const int k = anchors.size();
  const int s = std::min(opt.sparsity, k);
  const BatchOmp coder(anchors.atoms(), s);

  // normal equations of min ||H - Dh G||^2 + lambda ||Dh||^2 over the sparse codes G
  Mat ggt = Mat::Zero(k, k);
  Mat hgt = Mat::Zero(pool.targets.rows(), k);
  constexpr Eigen::Index kBlock = 1024;
  for (Eigen::Index b = 0; b < np.features.cols(); b += kBlock) {
    const Eigen::Index nb = std::min(kBlock, np.features.cols() - b);
    const Mat f = np.features.middleCols(b, nb).cast<double>();
    const Mat corr = anchors.atoms().transpose() * f;
    for (Eigen::Index c = 0; c < nb; ++c) {
      const SparseCode code = coder.code(f.col(c), corr.col(c));
      const Vec h = pool.targets.col(b + c).cast<double>() * static_cast<double>(np.inv_norm[b + c]);
      for (std::size_t i = 0; i < code.support.size(); ++i) {
        hgt.col(code.support[i]) += code.coeffs[i] * h;
        for (std::size_t j = 0; j < code.support.size(); ++j)
          ggt(code.support[i], code.support[j]) += code.coeffs[i] * code.coeffs[j];
      }
    }
  }
  ggt.diagonal().array() += opt.lambda;
  return ggt.ldlt().solve(hgt.transpose()).transpose();
}

RegressorBank train_bank_anr(const AnchorDictionary& anchors, const TrainingSet& pool, const AnrOptions& opt) {
  if (anchors.size() < 2) throw InvalidInput("ANR: needs at least 2 anchors");
  if (opt.neighborhood < 1) throw InvalidInput("ANR: neighborhood must be positive");
  const Mat hr_atoms = anr_hr_atoms(anchors, pool, opt);
  const int k = anchors.size();
  const std::size_t nbhd = std::min<std::size_t>(static_cast<std::size_t>(opt.neighborhood), static_cast<std::size_t>(k));

  RegressorBank bank;
  bank.anchors = anchors;
  bank.lambda = opt.lambda;
  bank.neighborhood_size = static_cast<int>(nbhd);
  bank.projections.resize(static_cast<std::size_t>(k));
  const MatF corr = (anchors.atoms().transpose() * anchors.atoms()).cast<float>();
  int ill = 0;
#pragma omp parallel for schedule(dynamic, 8) reduction(+ : ill)
  for (int j = 0; j < k; ++j) {
    const Eigen::VectorXf row = corr.col(j);
    const auto sel = select_top(std::span<const float>(row.data(), static_cast<std::size_t>(k)), nbhd);
    Mat nl(anchors.dim(), static_cast<Eigen::Index>(sel.size()));
    Mat nh(hr_atoms.rows(), static_cast<Eigen::Index>(sel.size()));
    for (std::size_t c = 0; c < sel.size(); ++c) {
      nl.col(static_cast<Eigen::Index>(c)) = anchors.atom(static_cast<int>(sel[c]));
      nh.col(static_cast<Eigen::Index>(c)) = hr_atoms.col(sel[c]);
    }
    RidgeResult fit = ridge_project(nl, nh, opt.lambda);
    ill += fit.ill_conditioned ? 1 : 0;
    bank.projections[j] = std::move(fit.projection);
  }
  bank.ill_conditioned = ill;
  return bank;
}

RegressorBank train_bank_context(const AnchorDictionary& anchors, const TrainingSet& pool, const ContextOptions& opt) {
  check_pool(anchors, pool);
  if (!pool.has_contexts() || pool.contexts.cols() != pool.features.cols()) {
    throw InvalidInput("context training: pool entries lack context features");
  }
  if (opt.neighborhood < 1) throw InvalidInput("context training: neighborhood must be positive");
  if (!(opt.weight_anchor >= 0.0 && opt.weight_context >= 0.0 && opt.weight_anchor + opt.weight_context > 0.0)) {
    throw InvalidInput("context training: weights must be non-negative and not both zero");
  }
  const std::size_t nbhd = std::min<std::size_t>(static_cast<std::size_t>(opt.neighborhood), pool.size());
  const std::size_t n = pool.size();

  const KmeansResult km =
      spherical_kmeans(pool.contexts.cast<double>(), kContextCount, opt.kmeans_iterations, opt.seed);
  ContextModel cm{km.centroids, opt.weight_anchor, opt.weight_context};

  // similarity of every sample's normalized context feature to each centroid
  MatF ctx = pool.contexts;
  for (Eigen::Index i = 0; i < ctx.cols(); ++i) {
    const float nrm = ctx.col(i).norm();
    if (nrm > 0.0f) ctx.col(i) /= nrm;
  }
  const Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> ctx_sim =
      cm.centroids.cast<float>().transpose() * ctx;

  const NormalizedPool np = normalize_pool(pool);
  const MatF atoms = anchors.atoms().cast<float>();
  RegressorBank bank;
  bank.anchors = anchors;
  bank.lambda = opt.lambda;
  bank.neighborhood_size = static_cast<int>(nbhd);
  bank.contexts = cm;
  bank.projections.resize(static_cast<std::size_t>(anchors.size()) * kContextCount);

  const float wa = static_cast<float>(opt.weight_anchor / (opt.weight_anchor + opt.weight_context));
  const float wc = static_cast<float>(opt.weight_context / (opt.weight_anchor + opt.weight_context));
  const Eigen::Index block = std::min<Eigen::Index>(anchor_block(n), anchors.size());
  RowMatF scores(block, np.features.cols());
  int ill = 0;
  for (Eigen::Index b = 0; b < anchors.size(); b += block) {
    const Eigen::Index nb = std::min<Eigen::Index>(block, anchors.size() - b);
    scores.topRows(nb).noalias() = atoms.middleCols(b, nb).transpose() * np.features;
#pragma omp parallel for schedule(dynamic, 1) reduction(+ : ill)
    for (Eigen::Index r = 0; r < nb; ++r) {
      thread_local std::vector<float> combined;
      combined.resize(n);
      for (int c = 0; c < kContextCount; ++c) {
        for (std::size_t i = 0; i < n; ++i) combined[i] = wa * scores(r, static_cast<Eigen::Index>(i)) + wc * ctx_sim(c, static_cast<Eigen::Index>(i));
        const auto sel = select_top(combined, nbhd);
        RidgeResult fit = fit_selected(np, pool, sel, opt.lambda);
        ill += fit.ill_conditioned ? 1 : 0;
        bank.projections[static_cast<std::size_t>(b + r) * kContextCount + c] = std::move(fit.projection);
      }
    }
  }
  bank.ill_conditioned = ill;
  return bank;
}

}  // namespace anchorsr
