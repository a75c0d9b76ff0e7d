#pragma once

#include "anchorsr/linalg.hpp"

namespace anchorsr {

inline constexpr double kIllConditioned = 1e12;

struct RidgeResult {
  Mat projection;           // rows: HR residual length, cols: feature dim
  double condition = 1.0;   // of the regularized system that was solved
  bool ill_conditioned = false;
};

/// Closed-form ridge projection P = Nh (Nl^T Nl + lambda I)^-1 Nl^T, so that
/// P y = Nh argmin_b ||y - Nl b||^2 + lambda ||b||^2. Columns of `nl` (LR
/// features) and `nh` (HR residuals) are aligned samples. The smaller of the
/// two equivalent symmetric systems (sample-space or feature-space) is
/// factorized with LDL^T; no explicit inverse is formed.
RidgeResult ridge_project(const Mat& nl, const Mat& nh, double lambda);

}  // namespace anchorsr
