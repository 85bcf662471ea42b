#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "empcc/tolerances.hpp"

namespace empcc::poly {

// H-representation {x : A x <= b}. Rows are kept unit-norm after normalize().
struct Polytope {
    Eigen::MatrixXd A;
    Eigen::VectorXd b;

    int dim() const { return static_cast<int>(A.cols()); }
    int rows() const { return static_cast<int>(A.rows()); }

    bool contains(const Eigen::VectorXd& x, double tol) const {
        if (rows() == 0) return true;
        return (A * x - b).maxCoeff() <= tol;
    }

    static Polytope box(const Eigen::VectorXd& lo, const Eigen::VectorXd& hi);
    static Polytope stack(const Polytope& p, const Polytope& q);
};

using VertexSet = std::vector<Eigen::VectorXd>;

struct ChebyshevResult {
    enum class Status { Ok, Infeasible, UnboundedRadius } status = Status::Infeasible;
    Eigen::VectorXd center;
    double radius = -std::numeric_limits<double>::infinity();
};

enum class Adjacency { Adjacent, Disjoint, Overlapping };

struct AdjacencyResult {
    Adjacency kind = Adjacency::Disjoint;
    // Facet hyperplane a'x = c (unit normal), valid when kind == Adjacent.
    Eigen::VectorXd facet_normal;
    double facet_offset = 0.0;
};

// Scale every row to unit Euclidean norm. Zero rows with nonnegative offset
// are dropped as tautologies; a zero row with negative offset marks the whole
// set empty and is kept as the single row 0'x <= -1.
Polytope normalize(const Polytope& p, const Tolerances& tols = default_tols());

// Minimal H-representation. Every removed row is implied by the others
// (LP max of the row over the remaining set <= offset + tol). Throws
// std::runtime_error on infeasible input.
Polytope remove_redundant(const Polytope& p, const Tolerances& tols = default_tols());

ChebyshevResult chebyshev(const Polytope& p, const Tolerances& tols = default_tols());

bool is_empty(const Polytope& p, const Tolerances& tols = default_tols());
bool is_bounded(const Polytope& p, const Tolerances& tols = default_tols());

// Exact vertex enumeration by n-subset intersection; requires a bounded,
// full-dimensional input of small dimension. Throws on unbounded input.
VertexSet vertices(const Polytope& p, const Tolerances& tols = default_tols());

AdjacencyResult are_adjacent(const Polytope& p1, const Polytope& p2,
                             const Tolerances& tols = default_tols());

// True iff the union of two adjacent polytopes is convex; checked through the
// envelope construction with one LP per flipped row.
bool union_is_convex(const Polytope& p1, const Polytope& p2,
                     const Tolerances& tols = default_tols());

// Envelope of two polytopes: rows of each valid over the other.
Polytope envelope(const Polytope& p1, const Polytope& p2,
                  const Tolerances& tols = default_tols());

}  // namespace empcc::poly
