#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "empcc/mpc.hpp"
#include "empcc/polytope.hpp"

namespace empcc::mpqp {

// One critical region of the explicit solution: the parameters sharing an
// optimal active set, with the first-input affine law over that region.
struct Region {
    poly::Polytope region;          // rows R_i, offsets q_i over p
    Eigen::MatrixXd gain;           // n_u x n_p
    Eigen::VectorXd offset;         // n_u
    std::vector<int> active_set;    // constraint indices of the condensed QP
};

struct PwaController {
    std::vector<Region> regions;
    poly::Polytope domain;
    int n_u = 0;
    int n_p = 0;
};

struct OutOfDomain : std::runtime_error {
    explicit OutOfDomain(const std::string& what) : std::runtime_error(what) {}
};
struct Uncovered : std::runtime_error {
    explicit Uncovered(const std::string& what) : std::runtime_error(what) {}
};

struct MpqpStats {
    int enumerated = 0;
    int degenerate_skipped = 0;
    int kept = 0;
};

// Explicit solution by combinatorial active-set enumeration up to
// |A| <= n_dec. Regions are stored row-normalized and redundancy-removed, in
// lexicographic active-set order.
PwaController solve_mpqp(const mpc::QpMpc& qp, const poly::Polytope& domain,
                         MpqpStats* stats = nullptr,
                         const Tolerances& tols = default_tols());

// Law evaluation: first containing region wins (continuity makes boundary
// values agree). Throws OutOfDomain / Uncovered.
Eigen::VectorXd eval(const PwaController& ctrl, const Eigen::VectorXd& p,
                     const Tolerances& tols = default_tols());

// Index of the first region containing p, or -1.
int locate(const PwaController& ctrl, const Eigen::VectorXd& p,
           const Tolerances& tols = default_tols());

struct VerifyReport {
    int samples = 0;
    int uncovered = 0;
    double max_abs_err = 0.0;
    Eigen::VectorXd worst_p;
};

// Cross-check the stored laws against the iterative QP kernel on uniform
// domain samples; failures are report entries, not exceptions.
VerifyReport verify_against_qp(const PwaController& ctrl, const mpc::QpMpc& qp,
                               int samples, std::uint64_t seed = 1,
                               const Tolerances& tols = default_tols());

// Uniform sample inside the domain polytope (rejection from a bounding box).
class DomainSampler {
  public:
    DomainSampler(const poly::Polytope& domain, const Tolerances& tols = default_tols());
    Eigen::VectorXd operator()(std::uint64_t& state) const;

  private:
    poly::Polytope domain_;
    Eigen::VectorXd lo_, hi_;
    double tol_;
};

}  // namespace empcc::mpqp
