#pragma once

#include <Eigen/Dense>

namespace anchorsr {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;
using MatF = Eigen::MatrixXf;
using VecF = Eigen::VectorXf;

}  // namespace anchorsr
