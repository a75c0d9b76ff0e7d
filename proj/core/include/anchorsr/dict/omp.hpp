#pragma once

#include <vector>

#include "anchorsr/dict/dictionary.hpp"
#include "anchorsr/linalg.hpp"

namespace anchorsr {

struct SparseCode {
  std::vector<int> support;     // atom indices in selection order
  std::vector<double> coeffs;   // aligned with support
  double residual_norm = 0.0;
};

inline constexpr double kOmpTolerance = 1e-9;

/// Orthogonal matching pursuit: greedily picks the atom most correlated (in
/// absolute value) with the residual, refits all selected coefficients by
/// least squares, and stops after `sparsity` atoms or once the residual norm
/// drops below `tolerance`. Ties go to the lowest atom index.
SparseCode omp(const AnchorDictionary& dict, const Vec& x, int sparsity, double tolerance = kOmpTolerance);

/// OMP for many signals against one dictionary, using the Gram matrix
/// (precomputed when the dictionary is small enough).
class BatchOmp {
 public:
  BatchOmp(const Mat& atoms, int sparsity, double tolerance = kOmpTolerance);

  /// Codes `x` given its correlations `corr` = atoms^T x.
  SparseCode code(const Eigen::Ref<const Vec>& x, const Eigen::Ref<const Vec>& corr) const;

  const Mat& atoms() const noexcept { return atoms_; }

 private:
  Vec gram_column(int k) const;

  const Mat& atoms_;
  Mat gram_;
  bool has_gram_ = false;
  int sparsity_;
  double tolerance_;
};

}  // namespace anchorsr
