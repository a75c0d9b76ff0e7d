#include "anchorsr/dict/omp.hpp"

#include <algorithm>
#include <cmath>

#include "anchorsr/error.hpp"

namespace anchorsr {
namespace {

constexpr Eigen::Index kMaxGramAtoms = 8192;

}  // namespace

BatchOmp::BatchOmp(const Mat& atoms, int sparsity, double tolerance)
    : atoms_(atoms), sparsity_(sparsity), tolerance_(tolerance) {
  if (sparsity < 1) throw InvalidInput("omp: sparsity must be >= 1");
  if (sparsity > atoms.cols()) throw InvalidInput("omp: sparsity exceeds dictionary size");
  if (atoms.cols() <= kMaxGramAtoms) {
    gram_ = atoms.transpose() * atoms;
    has_gram_ = true;
  }
}

Vec BatchOmp::gram_column(int k) const {
  if (has_gram_) return gram_.col(k);
  return atoms_.transpose() * atoms_.col(k);
}

SparseCode BatchOmp::code(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& corr) const {
  SparseCode out;
  const double x_sq = x.squaredNorm();
  if (x_sq == 0.0) return out;
  if (std::sqrt(x_sq) < tolerance_) {
    out.residual_norm = std::sqrt(x_sq);
    return out;
  }

  const Eigen::Index k_atoms = atoms_.cols();
  Vec alpha = corr;
  std::vector<int> support;
  Mat gram_cols(k_atoms, 0);
  Vec gamma;
  std::vector<char> chosen(static_cast<std::size_t>(k_atoms), 0);

  while (static_cast<int>(support.size()) < sparsity_) {
    int best = -1;
    double best_val = -1.0;
    for (Eigen::Index j = 0; j < k_atoms; ++j) {
      if (chosen[j]) continue;
      const double v = std::abs(alpha[j]);
      if (v > best_val) {
        best_val = v;
        best = static_cast<int>(j);
      }
    }
    if (best < 0 || best_val <= 1e-14 * std::sqrt(x_sq)) break;
    chosen[best] = 1;
    support.push_back(best);
    gram_cols.conservativeResize(Eigen::NoChange, gram_cols.cols() + 1);
    gram_cols.col(gram_cols.cols() - 1) = gram_column(best);

    const auto s = static_cast<Eigen::Index>(support.size());
    Mat g_ss(s, s);
    Vec rhs(s);
    for (Eigen::Index a = 0; a < s; ++a) {
      rhs[a] = corr[support[a]];
      for (Eigen::Index b = 0; b < s; ++b) g_ss(a, b) = gram_cols(support[a], b);
    }
    gamma = g_ss.ldlt().solve(rhs);
    alpha = corr - gram_cols * gamma;
    const double res_sq = x_sq - gamma.dot(rhs);
    if (res_sq < tolerance_ * tolerance_) break;
  }

  out.support = std::move(support);
  out.coeffs.assign(gamma.data(), gamma.data() + gamma.size());
  Vec r = x;
  for (std::size_t a = 0; a < out.support.size(); ++a) r -= out.coeffs[a] * atoms_.col(out.support[a]);
  out.residual_norm = r.norm();
  return out;
}

SparseCode omp(const AnchorDictionary& dict, const Vec& x, int sparsity, double tolerance) {
  if (x.size() != dict.dim()) throw InvalidInput("omp: signal dimension does not match the dictionary");
  const BatchOmp coder(dict.atoms(), sparsity, tolerance);
  const Vec corr = dict.atoms().transpose() * x;
  return coder.code(x, corr);
}

}  // namespace anchorsr
