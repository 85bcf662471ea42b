#pragma once

#include <Eigen/Dense>

#include "empcc/polytope.hpp"
#include "empcc/tolerances.hpp"

namespace empcc::mpc {

// Discrete-time affine plant
//   x+ = A x + B u + Bnu nu + b,   y = C x + D u + Dnu nu + d.
struct AffineModel {
    Eigen::MatrixXd A, B, Bnu, C, D, Dnu;
    Eigen::VectorXd b, d;

    int nx() const { return static_cast<int>(A.rows()); }
    int nu() const { return static_cast<int>(B.cols()); }
    int nnu() const { return static_cast<int>(Bnu.cols()); }
    int ny() const { return static_cast<int>(C.rows()); }
    int np() const { return nx() + nnu(); }

    void check_dims() const;
    double spectral_radius() const;
};

// Horizon, weights, references and stage constraints. nu_r is the disturbance
// level at which (u_r, x_r, y_r) is an equilibrium; zero for a plant whose
// affine terms already absorb the operating point.
struct MpcSpec {
    int N_p = 1;
    int N_c = 1;
    Eigen::MatrixXd Q, R, R_delta;
    Eigen::VectorXd y_r, u_r, x_r, nu_r;
    Eigen::MatrixXd H_x, H_u;
    Eigen::VectorXd h_x, h_u;

    void check_against(const AffineModel& m) const;
};

// Prediction/lifting blocks kept for oracle tests.
struct CondensationIntermediates {
    Eigen::MatrixXd Phi, Gamma, Gamma_nu;   // state stacking (N_p+1 block rows)
    Eigen::VectorXd gamma;
    Eigen::MatrixXd Cbar, Dbar, Dnu_stack;  // output stacking
    Eigen::VectorXd dbar, ybar_r;
    Eigen::MatrixXd Qbar, Rbar, Rdbar;
    Eigen::MatrixXd Hx_bar, Hu_bar;
    Eigen::VectorXd hx_bar, hu_bar;
};

// Condensed parametric QP over p = [x; nu]:
//   min 1/2 u'H u + (F p + c)'u   s.t.  G u <= w + K p.
// Scaling convention: H carries the factor 2, so the QP objective equals the
// stage cost up to a u-independent constant.
struct QpMpc {
    Eigen::MatrixXd H, F, G, K;
    Eigen::VectorXd c, w;
    Eigen::MatrixXd T;  // move-blocking map, identity when N_c == N_p
    int n_u = 1;
    int N_p = 1;
    int N_c = 1;
    int n_p = 0;

    int n_dec() const { return static_cast<int>(H.rows()); }
    int n_rows() const { return static_cast<int>(G.rows()); }
};

QpMpc condense(const AffineModel& model, const MpcSpec& spec,
               CondensationIntermediates* inter = nullptr);

// Restrict the input sequence to N_c degrees of freedom through the
// piecewise-constant lifting map; duplicate constraint rows produced by the
// collapse are removed keeping the most binding offset.
QpMpc move_block(const QpMpc& qp, int N_c, const Tolerances& tols = default_tols());

Eigen::MatrixXd move_block_matrix(int N_p, int N_c, int n_u);

// True iff (u_r, x_r, y_r) is an equilibrium at disturbance level nu_r.
bool equilibrium_check(const AffineModel& model, const MpcSpec& spec,
                       double rel_tol = 1e-9);

}  // namespace empcc::mpc
