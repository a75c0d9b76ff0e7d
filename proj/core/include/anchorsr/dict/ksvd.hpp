#pragma once

#include <cstdint>
#include <vector>

#include "anchorsr/dict/dictionary.hpp"
#include "anchorsr/linalg.hpp"

namespace anchorsr {

struct KsvdOptions {
  int atoms = 1024;
  int sparsity = 3;
  int iterations = 20;
  std::uint64_t seed = 1;
  /// Atom pairs with |<a_i, a_j>| above this are considered duplicates.
  double duplicate_threshold = 0.999;
};

struct KsvdResult {
  AnchorDictionary dictionary;
  /// Sum of squared representation errors after each iteration's atom update.
  std::vector<double> objective;
  /// Atoms re-seeded because they were unused or near-duplicates.
  int replaced_atoms = 0;
};

/// K-SVD over the columns of `samples` (dim x n). Each iteration codes every
/// sample with OMP (keeping the previous code if OMP does worse), then
/// updates every atom and its coefficients by a rank-1 SVD of the restricted
/// error. Atoms are kept unit norm with their first non-zero coordinate
/// positive. Throws DataError when n < atoms.
KsvdResult ksvd_train(const Mat& samples, const KsvdOptions& opt);

/// Sum of squared errors of OMP codes of `samples` against `dict`.
double coding_objective(const AnchorDictionary& dict, const Mat& samples, int sparsity);

}  // namespace anchorsr
