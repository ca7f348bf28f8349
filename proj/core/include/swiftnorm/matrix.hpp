#pragma once

#include <Eigen/Dense>

namespace swiftnorm {

/// Dense row-major matrix; one row per canonical form throughout the pipeline.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace swiftnorm
