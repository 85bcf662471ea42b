#include "empcc/qp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "empcc/lp.hpp"

namespace empcc::poly {

namespace {

// Feasible start: minimize the worst violation s over (u, s) and keep the u.
bool phase1_point(const Eigen::MatrixXd& G, const Eigen::VectorXd& w,
                  const Tolerances& tols, Eigen::VectorXd& u0) {
    const int m = static_cast<int>(G.rows());
    const int n = static_cast<int>(G.cols());
    LpProblem lp;
    lp.c.setZero(n + 1);
    lp.c(n) = 1.0;
    lp.A.setZero(m + 1, n + 1);
    lp.A.block(0, 0, m, n) = G;
    lp.A.col(n).head(m).setConstant(-1.0);
    lp.A(m, n) = -1.0;  // s >= 0
    lp.b.resize(m + 1);
    lp.b.head(m) = w;
    lp.b(m) = 0.0;
    const LpResult r = solve_lp(lp, tols);
    if (r.status != LpStatus::Optimal) return false;
    if (r.value > 1e3 * tols.feasibility) return false;
    u0 = r.x.head(n);
    return true;
}

}  // namespace

QpResult solve_qp(const QpProblem& qp, const Tolerances& tols) {
    QpResult res;
    const int n = static_cast<int>(qp.H.rows());
    const int m = static_cast<int>(qp.G.rows());
    if (qp.H.cols() != n || qp.f.size() != n || (m > 0 && qp.G.cols() != n) ||
        qp.w.size() != m) {
        throw std::invalid_argument("solve_qp: inconsistent dimensions");
    }
    Eigen::LLT<Eigen::MatrixXd> llt(qp.H);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("solve_qp: Hessian not positive definite");
    }

    Eigen::VectorXd u = -llt.solve(qp.f);
    if (m == 0 || ((qp.G * u - qp.w).maxCoeff() <= tols.feasibility)) {
        // Unconstrained minimizer already feasible: empty active set.
        res.u = u;
        res.value = 0.5 * u.dot(qp.H * u) + qp.f.dot(u);
        res.multipliers.resize(0);
        res.status = QpStatus::Optimal;
        return res;
    }

    if (!phase1_point(qp.G, qp.w, tols, u)) {
        res.status = QpStatus::Infeasible;
        return res;
    }

    std::vector<int> work;  // working set, kept sorted
    auto residual = [&](const Eigen::VectorXd& v) { return qp.G * v - qp.w; };
    {
        const Eigen::VectorXd r0 = residual(u);
        for (int i = 0; i < m && static_cast<int>(work.size()) < n; ++i) {
            if (r0(i) > -tols.feasibility) {
                // Only take rows that keep the working set independent.
                Eigen::MatrixXd Gw(static_cast<int>(work.size()) + 1, n);
                for (size_t k = 0; k < work.size(); ++k) Gw.row(static_cast<int>(k)) = qp.G.row(work[k]);
                Gw.row(static_cast<int>(work.size())) = qp.G.row(i);
                Eigen::FullPivLU<Eigen::MatrixXd> lu(Gw);
                lu.setThreshold(1e-10);
                if (lu.rank() == Gw.rows()) work.push_back(i);
            }
        }
    }

    Eigen::VectorXd lambda;
    for (int iter = 0; iter < tols.qp_max_iters; ++iter) {
        const int k = static_cast<int>(work.size());
        Eigen::VectorXd d(n);
        lambda.resize(k);
        if (k == 0) {
            d = -llt.solve(qp.H * u + qp.f);
        } else {
            Eigen::MatrixXd Gw(k, n);
            for (int i = 0; i < k; ++i) Gw.row(i) = qp.G.row(work[i]);
            Eigen::MatrixXd kkt(n + k, n + k);
            kkt.setZero();
            kkt.topLeftCorner(n, n) = qp.H;
            kkt.topRightCorner(n, k) = Gw.transpose();
            kkt.bottomLeftCorner(k, n) = Gw;
            Eigen::VectorXd rhs(n + k);
            rhs.head(n) = -(qp.H * u + qp.f);
            rhs.tail(k).setZero();
            Eigen::FullPivLU<Eigen::MatrixXd> lu(kkt);
            if (!lu.isInvertible()) {
                res.status = QpStatus::NumericalFailure;
                return res;
            }
            const Eigen::VectorXd sol = lu.solve(rhs);
            d = sol.head(n);
            lambda = sol.tail(k);
        }

        if (d.lpNorm<Eigen::Infinity>() <= 1e2 * tols.feasibility) {
            int drop = -1;
            double most_negative = -1e2 * tols.feasibility;
            for (int i = 0; i < k; ++i) {
                if (lambda(i) < most_negative) { most_negative = lambda(i); drop = i; }
            }
            if (drop < 0) {
                res.u = u;
                res.value = 0.5 * u.dot(qp.H * u) + qp.f.dot(u);
                res.active_set = work;
                res.multipliers.resize(k);
                for (int i = 0; i < k; ++i) res.multipliers(i) = std::max(0.0, lambda(i));
                res.status = QpStatus::Optimal;
                return res;
            }
            work.erase(work.begin() + drop);
            continue;
        }

        // Step length limited by the first blocking inactive row.
        double alpha = 1.0;
        int block = -1;
        for (int i = 0; i < m; ++i) {
            if (std::find(work.begin(), work.end(), i) != work.end()) continue;
            const double gd = qp.G.row(i).dot(d);
            if (gd > tols.pivot) {
                const double a = (qp.w(i) - qp.G.row(i).dot(u)) / gd;
                if (a < alpha - 1e-15) { alpha = a; block = i; }
            }
        }
        if (alpha < 0) alpha = 0;
        u += alpha * d;
        if (block >= 0) {
            work.insert(std::lower_bound(work.begin(), work.end(), block), block);
        }
    }
    res.status = QpStatus::NumericalFailure;
    return res;
}

}  // namespace empcc::poly
