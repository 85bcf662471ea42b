#pragma once

namespace empcc {

// All numeric tolerances used by the geometry/optimization kernel live in one
// record so callers can tighten or relax them coherently. Values assume
// row-normalized constraint data.
struct Tolerances {
    double feasibility = 1e-9;    // constraint satisfaction slack
    double redundancy = 1e-7;     // row-implication test margin
    double full_dim = 1e-7;       // Chebyshev radius threshold for full dimension
    double pivot = 1e-11;         // simplex / LU pivot threshold
    double law_match = 1e-9;      // affine-law equality (gain/offset compare)
    double vertex_dedupe = 1e-7;  // duplicate-vertex merge distance
    double containment = 1e-7;    // point-in-polytope slack for evaluation
    int lp_max_iters = 50000;
    int qp_max_iters = 1000;
};

inline const Tolerances& default_tols() {
    static const Tolerances t{};
    return t;
}

}  // namespace empcc
