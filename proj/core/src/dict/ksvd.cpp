#include "anchorsr/dict/ksvd.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "anchorsr/dict/omp.hpp"
#include "anchorsr/error.hpp"
#include "anchorsr/patch/sampling.hpp"

namespace anchorsr {
namespace {

constexpr Eigen::Index kBlock = 1024;

// Sparse codes of all samples, at most `sparsity` entries each.
struct Codes {
  int sparsity = 0;
  std::vector<int> count;
  std::vector<int> index;
  std::vector<double> value;

  Codes(Eigen::Index n, int s)
      : sparsity(s), count(static_cast<std::size_t>(n), 0), index(static_cast<std::size_t>(n) * s, -1),
        value(static_cast<std::size_t>(n) * s, 0.0) {}

  void set(Eigen::Index i, const SparseCode& c) {
    count[i] = static_cast<int>(c.support.size());
    for (int a = 0; a < count[i]; ++a) {
      index[i * sparsity + a] = c.support[a];
      value[i * sparsity + a] = c.coeffs[a];
    }
  }
};

void code_all(const Mat& atoms, const Mat& samples, Codes& codes, Mat& residual, bool keep_better) {
  const BatchOmp coder(atoms, codes.sparsity);
  const Eigen::Index n = samples.cols();
  for (Eigen::Index b = 0; b < n; b += kBlock) {
    const Eigen::Index nb = std::min(kBlock, n - b);
    const Mat corr = atoms.transpose() * samples.middleCols(b, nb);
#pragma omp parallel for schedule(dynamic, 64)
    for (Eigen::Index c = 0; c < nb; ++c) {
      const Eigen::Index i = b + c;
      const SparseCode code = coder.code(samples.col(i), corr.col(c));
      if (keep_better && code.residual_norm * code.residual_norm >= residual.col(i).squaredNorm()) continue;
      codes.set(i, code);
      Vec r = samples.col(i);
      for (std::size_t a = 0; a < code.support.size(); ++a) r -= code.coeffs[a] * atoms.col(code.support[a]);
      residual.col(i) = r;
    }
  }
}

// Exact rank-1 approximation u * g^T of E (d x m) with u unit norm.
void rank_one(const Mat& e, Vec& u, Vec& g) {
  const Mat m = e * e.transpose();
  Eigen::SelfAdjointEigenSolver<Mat> eig(m);
  u = eig.eigenvectors().col(m.rows() - 1);
  g = e.transpose() * u;
}

Eigen::Index worst_sample(const Mat& residual, std::vector<char>& taken) {
  Eigen::Index best = -1;
  double best_err = -1.0;
  for (Eigen::Index i = 0; i < residual.cols(); ++i) {
    if (taken[i]) continue;
    const double e = residual.col(i).squaredNorm();
    if (e > best_err) {
      best_err = e;
      best = i;
    }
  }
  return best;
}

}  // namespace

KsvdResult ksvd_train(const Mat& samples, const KsvdOptions& opt) {
  const Eigen::Index n = samples.cols();
  const Eigen::Index dim = samples.rows();
  if (opt.atoms < 1) throw InvalidInput("ksvd: dictionary size must be positive");
  if (opt.sparsity < 1 || opt.sparsity > opt.atoms) throw InvalidInput("ksvd: invalid sparsity");
  if (n < opt.atoms) {
    throw DataError("ksvd: " + std::to_string(n) + " samples cannot train " + std::to_string(opt.atoms) + " atoms");
  }

  // initialise from distinct random non-zero samples
  std::vector<Eigen::Index> nonzero;
  nonzero.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i)
    if (samples.col(i).squaredNorm() > 0.0) nonzero.push_back(i);
  if (static_cast<Eigen::Index>(nonzero.size()) < opt.atoms) throw DataError("ksvd: too few non-zero samples");
  const auto pick = sample_indices(nonzero.size(), static_cast<std::size_t>(opt.atoms), opt.seed);
  Mat atoms(dim, opt.atoms);
  for (int j = 0; j < opt.atoms; ++j) {
    atoms.col(j) = samples.col(nonzero[pick[j]]).normalized();
    canonicalize_sign(atoms.col(j));
  }

  KsvdResult result;
  Codes codes(n, opt.sparsity);
  Mat residual = samples;
  std::vector<std::vector<std::pair<Eigen::Index, int>>> users(static_cast<std::size_t>(opt.atoms));

  for (int it = 0; it < opt.iterations; ++it) {
    code_all(atoms, samples, codes, residual, it > 0);

    for (auto& u : users) u.clear();
    for (Eigen::Index i = 0; i < n; ++i)
      for (int a = 0; a < codes.count[i]; ++a) users[codes.index[i * opt.sparsity + a]].emplace_back(i, a);

    std::vector<int> unused;
    Vec u, g;
    for (int k = 0; k < opt.atoms; ++k) {
      const auto& uk = users[k];
      if (uk.empty()) {
        unused.push_back(k);
        continue;
      }
      const auto m = static_cast<Eigen::Index>(uk.size());
      Mat e(dim, m);
      for (Eigen::Index c = 0; c < m; ++c) {
        const auto [i, slot] = uk[c];
        e.col(c) = residual.col(i) + codes.value[i * opt.sparsity + slot] * atoms.col(k);
      }
      rank_one(e, u, g);
      if (canonicalize_sign(u)) g = -g;
      atoms.col(k) = u;
      for (Eigen::Index c = 0; c < m; ++c) {
        const auto [i, slot] = uk[c];
        codes.value[i * opt.sparsity + slot] = g[c];
        residual.col(i) = e.col(c) - g[c] * u;
      }
    }
    result.objective.push_back(residual.squaredNorm());

    // re-seed unused atoms and the later member of near-duplicate pairs with
    // the worst represented samples
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    std::vector<char> replaced(static_cast<std::size_t>(opt.atoms), 0);
    auto reseed = [&](int k) {
      const Eigen::Index w = worst_sample(residual, taken);
      if (w < 0 || samples.col(w).squaredNorm() == 0.0) return;
      taken[w] = 1;
      replaced[k] = 1;
      // drop the old atom's contribution from every code using it
      for (const auto& [i, slot] : users[k]) {
        const double v = codes.value[i * opt.sparsity + slot];
        residual.col(i) += v * atoms.col(k);
        const int last = codes.count[i] - 1;
        codes.index[i * opt.sparsity + slot] = codes.index[i * opt.sparsity + last];
        codes.value[i * opt.sparsity + slot] = codes.value[i * opt.sparsity + last];
        codes.index[i * opt.sparsity + last] = -1;
        codes.value[i * opt.sparsity + last] = 0.0;
        codes.count[i] = last;
      }
      atoms.col(k) = samples.col(w).normalized();
      canonicalize_sign(atoms.col(k));
      ++result.replaced_atoms;
    };
    for (int k : unused) reseed(k);

    for (Eigen::Index b = 0; b < opt.atoms; b += kBlock) {
      const Eigen::Index nb = std::min<Eigen::Index>(kBlock, opt.atoms - b);
      const Mat gram = atoms.transpose() * atoms.middleCols(b, nb);
      for (Eigen::Index c = 0; c < nb; ++c) {
        const auto k = static_cast<int>(b + c);
        if (replaced[k]) continue;
        for (Eigen::Index r = 0; r < k; ++r) {
          if (!replaced[r] && std::abs(gram(r, c)) > opt.duplicate_threshold) {
            // slot bookkeeping in users[k] is stale after a swap-remove, so
            // rebuild this atom's user list from the codes first
            users[k].clear();
            for (Eigen::Index i = 0; i < n; ++i)
              for (int a = 0; a < codes.count[i]; ++a)
                if (codes.index[i * opt.sparsity + a] == k) users[k].emplace_back(i, a);
            reseed(k);
            break;
          }
        }
      }
    }
  }

  result.dictionary = AnchorDictionary::from_unit_atoms(std::move(atoms));
  return result;
}

double coding_objective(const AnchorDictionary& dict, const Mat& samples, int sparsity) {
  Codes codes(samples.cols(), sparsity);
  Mat residual = samples;
  code_all(dict.atoms(), samples, codes, residual, false);
  return residual.squaredNorm();
}

}  // namespace anchorsr
