#include "anchorsr/regress/ridge.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "anchorsr/error.hpp"

namespace anchorsr {

RidgeResult ridge_project(const Mat& nl, const Mat& nh, double lambda) {
  if (nl.cols() != nh.cols()) throw InvalidInput("ridge_project: LR and HR sample counts differ");
  if (nl.cols() == 0) throw InvalidInput("ridge_project: empty neighborhood");
  if (!(lambda > 0.0)) throw InvalidInput("ridge_project: lambda must be positive");

  const Eigen::Index d = nl.rows();
  const Eigen::Index m = nl.cols();
  RidgeResult out;
  Mat system;
  if (m < d) {
    // sample space: P = Nh (Nl^T Nl + lambda I)^-1 Nl^T
    system = nl.transpose() * nl;
    system.diagonal().array() += lambda;
    const Mat weights = system.ldlt().solve(nh.transpose());  // m x q
    out.projection = weights.transpose() * nl.transpose();
  } else {
    // feature space (push-through identity): P = Nh Nl^T (Nl Nl^T + lambda I)^-1
    system = nl * nl.transpose();
    system.diagonal().array() += lambda;
    const Mat rhs = nl * nh.transpose();  // d x q
    out.projection = system.ldlt().solve(rhs).transpose();
  }

  const Vec ev = Eigen::SelfAdjointEigenSolver<Mat>(system, Eigen::EigenvaluesOnly).eigenvalues();
  const double lo = ev.minCoeff();
  out.condition = lo > 0.0 ? ev.maxCoeff() / lo : std::numeric_limits<double>::infinity();
  out.ill_conditioned = !(out.condition <= kIllConditioned);
  return out;
}

}  // namespace anchorsr
