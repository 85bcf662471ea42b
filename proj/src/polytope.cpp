#include "empcc/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "empcc/lp.hpp"

namespace empcc::poly {

namespace {

Polytope from_rows(const std::vector<Eigen::VectorXd>& rows,
                   const std::vector<double>& offs, int n) {
    Polytope q;
    q.A.resize(static_cast<int>(rows.size()), n);
    q.b.resize(static_cast<int>(rows.size()));
    for (size_t i = 0; i < rows.size(); ++i) {
        q.A.row(static_cast<int>(i)) = rows[i];
        q.b(static_cast<int>(i)) = offs[i];
    }
    return q;
}

// max a'x over p; returns +inf when unbounded, throws on infeasible input.
double row_max(const Polytope& p, const Eigen::VectorXd& a, const Tolerances& tols) {
    LpProblem lp{-a, p.A, p.b};
    const LpResult r = solve_lp(lp, tols);
    if (r.status == LpStatus::Unbounded) return std::numeric_limits<double>::infinity();
    if (r.status != LpStatus::Optimal) throw std::runtime_error("row_max: LP failed");
    return -r.value;
}

}  // namespace

Polytope Polytope::box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi) {
    const int n = static_cast<int>(lo.size());
    Polytope p;
    p.A.setZero(2 * n, n);
    p.b.resize(2 * n);
    for (int i = 0; i < n; ++i) {
        p.A(2 * i, i) = 1.0;
        p.b(2 * i) = hi(i);
        p.A(2 * i + 1, i) = -1.0;
        p.b(2 * i + 1) = -lo(i);
    }
    return p;
}

Polytope Polytope::stack(const Polytope& p, const Polytope& q) {
    Polytope s;
    s.A.resize(p.rows() + q.rows(), p.dim());
    s.b.resize(p.rows() + q.rows());
    s.A << p.A, q.A;
    s.b << p.b, q.b;
    return s;
}

Polytope normalize(const Polytope& p, const Tolerances& tols) {
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> offs;
    for (int i = 0; i < p.rows(); ++i) {
        const double nrm = p.A.row(i).norm();
        if (nrm <= tols.pivot) {
            if (p.b(i) < -tols.feasibility) {
                Polytope empty;
                empty.A.setZero(1, p.dim());
                empty.b.resize(1);
                empty.b(0) = -1.0;
                return empty;
            }
            continue;  // tautology
        }
        rows.push_back(p.A.row(i) / nrm);
        offs.push_back(p.b(i) / nrm);
    }
    return from_rows(rows, offs, p.dim());
}

bool is_empty(const Polytope& p, const Tolerances& tols) {
    if (p.rows() == 0) return false;
    LpProblem lp{Eigen::VectorXd::Zero(p.dim()), p.A, p.b};
    return solve_lp(lp, tols).status == LpStatus::Infeasible;
}

bool is_bounded(const Polytope& p, const Tolerances& tols) {
    for (int j = 0; j < p.dim(); ++j) {
        for (double s : {1.0, -1.0}) {
            Eigen::VectorXd a = Eigen::VectorXd::Zero(p.dim());
            a(j) = s;
            if (std::isinf(row_max(p, a, tols))) return false;
        }
    }
    return true;
}

Polytope remove_redundant(const Polytope& p, const Tolerances& tols) {
    Polytope q = normalize(p, tols);
    if (is_empty(q, tols)) throw std::runtime_error("remove_redundant: empty polytope");
    std::vector<bool> keep(q.rows(), true);
    for (int i = 0; i < q.rows(); ++i) {
        // Polytope formed by all currently kept rows except i.
        std::vector<Eigen::VectorXd> rows;
        std::vector<double> offs;
        for (int j = 0; j < q.rows(); ++j) {
            if (j == i || !keep[j]) continue;
            rows.push_back(q.A.row(j));
            offs.push_back(q.b(j));
        }
        if (rows.empty()) continue;
        const Polytope rest = from_rows(rows, offs, q.dim());
        const double mx = row_max(rest, q.A.row(i), tols);
        if (mx <= q.b(i) + tols.redundancy) keep[i] = false;
    }
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> offs;
    for (int i = 0; i < q.rows(); ++i) {
        if (keep[i]) {
            rows.push_back(q.A.row(i));
            offs.push_back(q.b(i));
        }
    }
    return from_rows(rows, offs, q.dim());
}

ChebyshevResult chebyshev(const Polytope& p, const Tolerances& tols) {
    ChebyshevResult out;
    const int n = p.dim();
    if (p.rows() == 0) {
        out.status = ChebyshevResult::Status::UnboundedRadius;
        out.center = Eigen::VectorXd::Zero(n);
        out.radius = std::numeric_limits<double>::infinity();
        return out;
    }
    // max r  s.t.  a_i'x + ||a_i|| r <= b_i
    LpProblem lp;
    lp.c.setZero(n + 1);
    lp.c(n) = -1.0;
    lp.A.resize(p.rows(), n + 1);
    lp.A.leftCols(n) = p.A;
    for (int i = 0; i < p.rows(); ++i) lp.A(i, n) = p.A.row(i).norm();
    lp.b = p.b;
    const LpResult r = solve_lp(lp, tols);
    if (r.status == LpStatus::Infeasible ||
        (r.status == LpStatus::Optimal && r.x(n) < -tols.feasibility)) {
        // A negative best inflation radius means the polytope itself is empty.
        out.status = ChebyshevResult::Status::Infeasible;
        return out;
    }
    if (r.status == LpStatus::Unbounded) {
        out.status = ChebyshevResult::Status::UnboundedRadius;
        out.radius = std::numeric_limits<double>::infinity();
        // Any feasible point will do for the center.
        LpProblem feas{Eigen::VectorXd::Zero(n), p.A, p.b};
        const LpResult fr = solve_lp(feas, tols);
        out.center = (fr.status == LpStatus::Optimal) ? fr.x : Eigen::VectorXd::Zero(n);
        return out;
    }
    if (r.status != LpStatus::Optimal) throw std::runtime_error("chebyshev: LP failed");
    out.status = ChebyshevResult::Status::Ok;
    out.center = r.x.head(n);
    out.radius = r.x(n);
    return out;
}

VertexSet vertices(const Polytope& p, const Tolerances& tols) {
    const int n = p.dim();
    const Polytope q = normalize(p, tols);
    const int m = q.rows();
    if (m < n) throw std::invalid_argument("vertices: too few rows to be bounded");
    if (!is_bounded(q, tols)) throw std::invalid_argument("vertices: unbounded polytope");

    VertexSet out;
    std::vector<int> idx(n);
    // Enumerate all n-subsets of rows in lexicographic order.
    std::vector<int> comb(n);
    std::iota(comb.begin(), comb.end(), 0);
    auto advance = [&]() -> bool {
        int i = n - 1;
        while (i >= 0 && comb[i] == m - n + i) --i;
        if (i < 0) return false;
        ++comb[i];
        for (int j = i + 1; j < n; ++j) comb[j] = comb[j - 1] + 1;
        return true;
    };
    do {
        Eigen::MatrixXd As(n, n);
        Eigen::VectorXd bs(n);
        for (int i = 0; i < n; ++i) {
            As.row(i) = q.A.row(comb[i]);
            bs(i) = q.b(comb[i]);
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(As);
        lu.setThreshold(1e-9);
        if (lu.rank() < n) continue;
        const Eigen::VectorXd x = lu.solve(bs);
        if (!x.allFinite()) continue;
        const double scale = 1.0 + x.lpNorm<Eigen::Infinity>();
        if ((q.A * x - q.b).maxCoeff() > tols.feasibility * 1e2 * scale) continue;
        bool dup = false;
        for (const auto& v : out) {
            if ((v - x).lpNorm<Eigen::Infinity>() <= tols.vertex_dedupe * scale) {
                dup = true;
                break;
            }
        }
        if (!dup) out.push_back(x);
    } while (advance());
    return out;
}

namespace {

// Chebyshev radius of q restricted to the hyperplane a'x = c, measured in the
// affine hull of the hyperplane.
double facet_radius(const Polytope& q, const Eigen::VectorXd& a, double c,
                    const Tolerances& tols) {
    const int n = q.dim();
    LpProblem lp;
    lp.c.setZero(n + 1);
    lp.c(n) = -1.0;
    const int m = q.rows();
    lp.A.resize(m + 2, n + 1);
    lp.b.resize(m + 2);
    for (int i = 0; i < m; ++i) {
        lp.A.row(i).head(n) = q.A.row(i);
        const Eigen::VectorXd ai = q.A.row(i).transpose();
        const Eigen::VectorXd proj = ai - ai.dot(a) * a;  // a is unit norm
        lp.A(i, n) = proj.norm();
        lp.b(i) = q.b(i);
    }
    lp.A.row(m).head(n) = a;
    lp.A(m, n) = 0.0;
    lp.b(m) = c;
    lp.A.row(m + 1).head(n) = -a;
    lp.A(m + 1, n) = 0.0;
    lp.b(m + 1) = -c;
    const LpResult r = solve_lp(lp, tols);
    if (r.status == LpStatus::Unbounded) return std::numeric_limits<double>::infinity();
    if (r.status != LpStatus::Optimal) return -std::numeric_limits<double>::infinity();
    return r.x(n);
}

}  // namespace

AdjacencyResult are_adjacent(const Polytope& p1, const Polytope& p2,
                             const Tolerances& tols) {
    AdjacencyResult out;
    const Polytope q = normalize(Polytope::stack(p1, p2), tols);
    if (is_empty(q, tols)) {
        out.kind = Adjacency::Disjoint;
        return out;
    }
    const ChebyshevResult ch = chebyshev(q, tols);
    if (ch.status == ChebyshevResult::Status::Infeasible) {
        out.kind = Adjacency::Disjoint;
        return out;
    }
    if (ch.status == ChebyshevResult::Status::Ok && ch.radius > tols.full_dim) {
        out.kind = Adjacency::Overlapping;
        return out;
    }
    // The intersection is lower-dimensional; find a hyperplane containing it
    // and measure the intersection inside that hyperplane.
    const Polytope n1 = normalize(p1, tols);
    for (int i = 0; i < n1.rows(); ++i) {
        const Eigen::VectorXd a = n1.A.row(i).transpose();
        const double hi = row_max(q, a, tols);
        const double lo = -row_max(q, -a, tols);
        if (hi - lo <= tols.full_dim) {
            const double c = 0.5 * (hi + lo);
            const double r = facet_radius(q, a, c, tols);
            if (r > tols.full_dim) {
                out.kind = Adjacency::Adjacent;
                out.facet_normal = a;
                out.facet_offset = c;
                return out;
            }
        }
    }
    out.kind = Adjacency::Disjoint;
    return out;
}

Polytope envelope(const Polytope& p1, const Polytope& p2, const Tolerances& tols) {
    const Polytope a = normalize(p1, tols);
    const Polytope b = normalize(p2, tols);
    std::vector<Eigen::VectorXd> rows;
    std::vector<double> offs;
    auto take_valid = [&](const Polytope& from, const Polytope& over) {
        for (int i = 0; i < from.rows(); ++i) {
            if (row_max(over, from.A.row(i), tols) <= from.b(i) + tols.redundancy) {
                rows.push_back(from.A.row(i));
                offs.push_back(from.b(i));
            }
        }
    };
    take_valid(a, b);
    take_valid(b, a);
    return from_rows(rows, offs, p1.dim());
}

bool union_is_convex(const Polytope& p1, const Polytope& p2, const Tolerances& tols) {
    const Polytope a = normalize(p1, tols);
    const Polytope b = normalize(p2, tols);
    const Polytope env = envelope(a, b, tols);

    // The union equals the envelope iff each envelope piece cut off by a
    // flipped non-envelope row of one polytope lies inside the other.
    auto covered = [&](const Polytope& from, const Polytope& other) {
        for (int i = 0; i < from.rows(); ++i) {
            if (row_max(other, from.A.row(i), tols) <= from.b(i) + tols.redundancy) {
                continue;  // envelope row, nothing cut off
            }
            Polytope piece = env;
            piece.A.conservativeResize(piece.rows() + 1, Eigen::NoChange);
            piece.b.conservativeResize(piece.rows());
            piece.A.row(piece.rows() - 1) = -from.A.row(i);
            piece.b(piece.rows() - 1) = -from.b(i);
            if (is_empty(piece, tols)) continue;
            for (int j = 0; j < other.rows(); ++j) {
                if (row_max(piece, other.A.row(j), tols) > other.b(j) + tols.redundancy) {
                    return false;
                }
            }
        }
        return true;
    };
    return covered(a, b) && covered(b, a);
}

}  // namespace empcc::poly
