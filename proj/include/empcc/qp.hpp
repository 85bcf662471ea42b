#pragma once

#include <Eigen/Dense>
#include <vector>

#include "empcc/tolerances.hpp"

namespace empcc::poly {

// min 1/2 u'H u + f'u  s.t.  G u <= w  with H symmetric positive definite.
struct QpProblem {
    Eigen::MatrixXd H;
    Eigen::VectorXd f;
    Eigen::MatrixXd G;
    Eigen::VectorXd w;
};

enum class QpStatus { Optimal, Infeasible, NumericalFailure };

struct QpResult {
    QpStatus status = QpStatus::NumericalFailure;
    Eigen::VectorXd u;
    double value = 0.0;
    std::vector<int> active_set;   // rows active at the optimum
    Eigen::VectorXd multipliers;   // one per active row, nonnegative
};

// Primal active-set method; an infeasible warm point is repaired through the
// LP kernel. The returned active set is what the mp-QP enumerator consumes.
QpResult solve_qp(const QpProblem& qp, const Tolerances& tols = default_tols());

}  // namespace empcc::poly
