#pragma once

#include <Eigen/Dense>

#include "empcc/tolerances.hpp"

namespace empcc::poly {

// min c'x  s.t.  A x <= b  with x free.
struct LpProblem {
    Eigen::VectorXd c;
    Eigen::MatrixXd A;
    Eigen::VectorXd b;
};

enum class LpStatus { Optimal, Infeasible, Unbounded, NumericalFailure };

struct LpResult {
    LpStatus status = LpStatus::NumericalFailure;
    Eigen::VectorXd x;
    double value = 0.0;
    // Multipliers for the rows of A (>= 0 at optimality), recovered from the
    // reduced costs of the slack columns.
    Eigen::VectorXd dual;
};

// Two-phase dense tableau simplex with Bland's rule. Deterministic: entering
// and leaving variables are picked by smallest index.
LpResult solve_lp(const LpProblem& lp, const Tolerances& tols = default_tols());

}  // namespace empcc::poly
