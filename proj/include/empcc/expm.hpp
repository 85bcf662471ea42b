#pragma once

#include <Eigen/Dense>

namespace empcc {

// Matrix exponential by scaling-and-squaring with a degree-13 Pade
// approximant. Sized for the small dense matrices used throughout.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

// Truncated Taylor series, used as an independent cross-check in tests.
Eigen::MatrixXd expm_series(const Eigen::MatrixXd& A, int terms = 60);

}  // namespace empcc
