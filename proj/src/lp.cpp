#include "empcc/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace empcc::poly {

namespace {

// Tableau layout: columns [x+ (n) | x- (n) | slack (m) | artificial (na)],
// rightmost column holds the rhs. Row 0..m-1 are constraints, the objective
// is kept in a separate row vector.
struct Tableau {
    Eigen::MatrixXd body;   // m x (ncols+1)
    Eigen::VectorXd obj;    // ncols reduced costs
    double obj_rhs = 0.0;
    std::vector<int> basis; // basis[r] = column basic in row r
};

void pivot(Tableau& t, int row, int col) {
    const double piv = t.body(row, col);
    t.body.row(row) /= piv;
    for (int r = 0; r < t.body.rows(); ++r) {
        if (r == row) continue;
        const double f = t.body(r, col);
        if (f != 0.0) t.body.row(r) -= f * t.body.row(row);
    }
    const double fo = t.obj(col);
    if (fo != 0.0) {
        t.obj -= fo * t.body.row(row).head(t.obj.size());
        t.obj_rhs -= fo * t.body(row, t.body.cols() - 1);
    }
    t.basis[row] = col;
}

// Bland: entering = smallest-index column with negative reduced cost,
// leaving = smallest-index basic variable among minimum-ratio rows.
// Returns 0 optimal, 1 unbounded, 2 iteration cap.
int run_simplex(Tableau& t, const std::vector<bool>& usable, double pivot_tol, int max_iters) {
    const int m = static_cast<int>(t.body.rows());
    const int ncols = static_cast<int>(t.obj.size());
    const int rhs_col = ncols;
    for (int iter = 0; iter < max_iters; ++iter) {
        int enter = -1;
        for (int j = 0; j < ncols; ++j) {
            if (usable[j] && t.obj(j) < -pivot_tol) { enter = j; break; }
        }
        if (enter < 0) return 0;
        int leave = -1;
        double best_ratio = std::numeric_limits<double>::infinity();
        for (int r = 0; r < m; ++r) {
            const double a = t.body(r, enter);
            if (a > pivot_tol) {
                const double ratio = t.body(r, rhs_col) / a;
                if (ratio < best_ratio - 1e-15 ||
                    (std::abs(ratio - best_ratio) <= 1e-15 &&
                     (leave < 0 || t.basis[r] < t.basis[leave]))) {
                    best_ratio = ratio;
                    leave = r;
                }
            }
        }
        if (leave < 0) return 1;
        pivot(t, leave, enter);
    }
    return 2;
}

}  // namespace

LpResult solve_lp(const LpProblem& lp, const Tolerances& tols) {
    LpResult res;
    const int m = static_cast<int>(lp.A.rows());
    const int n = static_cast<int>(lp.A.cols());
    if (lp.b.size() != m || lp.c.size() != n) {
        res.status = LpStatus::NumericalFailure;
        return res;
    }
    if (!lp.A.allFinite() || !lp.b.allFinite() || !lp.c.allFinite()) {
        res.status = LpStatus::NumericalFailure;
        return res;
    }
    if (m == 0) {
        // No constraints: optimal only if c == 0.
        if (lp.c.lpNorm<Eigen::Infinity>() <= tols.pivot) {
            res.status = LpStatus::Optimal;
            res.x = Eigen::VectorXd::Zero(n);
            res.value = 0.0;
            res.dual = Eigen::VectorXd::Zero(0);
            return res;
        }
        res.status = LpStatus::Unbounded;
        return res;
    }

    // Standard form: A(x+ - x-) + s = b with x+, x-, s >= 0. Rows with b < 0
    // are negated; an artificial variable is added wherever the slack can no
    // longer serve as the initial basic variable.
    std::vector<int> row_sign(m, 1);
    std::vector<int> art_of_row(m, -1);
    int na = 0;
    for (int i = 0; i < m; ++i) {
        if (lp.b(i) < 0) {
            row_sign[i] = -1;
            art_of_row[i] = na++;
        }
    }
    const int ncols = 2 * n + m + na;
    Tableau t;
    t.body.setZero(m, ncols + 1);
    t.basis.assign(m, -1);
    for (int i = 0; i < m; ++i) {
        const double s = row_sign[i];
        for (int j = 0; j < n; ++j) {
            t.body(i, j) = s * lp.A(i, j);
            t.body(i, n + j) = -s * lp.A(i, j);
        }
        t.body(i, 2 * n + i) = s;  // slack (negated along with the row)
        t.body(i, ncols) = s * lp.b(i);
        if (art_of_row[i] >= 0) {
            t.body(i, 2 * n + m + art_of_row[i]) = 1.0;
            t.basis[i] = 2 * n + m + art_of_row[i];
        } else {
            t.basis[i] = 2 * n + i;
        }
    }

    std::vector<bool> usable(ncols, true);

    // Phase 1: minimize the sum of artificials.
    if (na > 0) {
        t.obj.setZero(ncols);
        t.obj_rhs = 0.0;
        for (int j = 0; j < na; ++j) t.obj(2 * n + m + j) = 1.0;
        // Price out the artificial basis.
        for (int i = 0; i < m; ++i) {
            if (art_of_row[i] >= 0) {
                t.obj -= t.body.row(i).head(ncols);
                t.obj_rhs -= t.body(i, ncols);
            }
        }
        const int rc = run_simplex(t, usable, tols.pivot, tols.lp_max_iters);
        if (rc == 2) { res.status = LpStatus::NumericalFailure; return res; }
        const double phase1 = -t.obj_rhs;
        if (phase1 > 1e3 * tols.feasibility) {
            res.status = LpStatus::Infeasible;
            return res;
        }
        // Drive any residual artificial out of the basis; rows where that is
        // impossible are redundant and harmless.
        for (int r = 0; r < m; ++r) {
            if (t.basis[r] >= 2 * n + m) {
                int col = -1;
                for (int j = 0; j < 2 * n + m; ++j) {
                    if (std::abs(t.body(r, j)) > tols.pivot) { col = j; break; }
                }
                if (col >= 0) pivot(t, r, col);
            }
        }
        for (int j = 2 * n + m; j < ncols; ++j) usable[j] = false;
    }

    // Phase 2 objective.
    t.obj.setZero(ncols);
    t.obj_rhs = 0.0;
    for (int j = 0; j < n; ++j) {
        t.obj(j) = lp.c(j);
        t.obj(n + j) = -lp.c(j);
    }
    for (int r = 0; r < m; ++r) {
        const int bcol = t.basis[r];
        const double f = t.obj(bcol);
        if (f != 0.0) {
            t.obj -= f * t.body.row(r).head(ncols);
            t.obj_rhs -= f * t.body(r, ncols);
        }
    }
    const int rc = run_simplex(t, usable, tols.pivot, tols.lp_max_iters);
    if (rc == 2) { res.status = LpStatus::NumericalFailure; return res; }
    if (rc == 1) { res.status = LpStatus::Unbounded; return res; }

    Eigen::VectorXd full = Eigen::VectorXd::Zero(ncols);
    for (int r = 0; r < m; ++r) {
        if (t.basis[r] >= 0 && t.basis[r] < ncols) full(t.basis[r]) = t.body(r, ncols);
    }
    res.x = full.head(n) - full.segment(n, n);
    res.value = res.x.dot(lp.c);
    // Reduced cost of slack i equals the dual multiplier of row i; the sign
    // flip applied to negative-rhs rows cancels out of that identity.
    res.dual.setZero(m);
    for (int i = 0; i < m; ++i) {
        res.dual(i) = std::max(0.0, t.obj(2 * n + i));
    }
    if (!res.x.allFinite()) { res.status = LpStatus::NumericalFailure; return res; }
    res.status = LpStatus::Optimal;
    return res;
}

}  // namespace empcc::poly
