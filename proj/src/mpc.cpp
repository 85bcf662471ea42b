#include "empcc/mpc.hpp"

#include <Eigen/Eigenvalues>
#include <map>
#include <stdexcept>
#include <vector>

namespace empcc::mpc {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void AffineModel::check_dims() const {
    const int n = nx();
    if (A.cols() != n || B.rows() != n || Bnu.rows() != n || b.size() != n) {
        throw std::invalid_argument("AffineModel: state equation dimensions");
    }
    if (C.cols() != n || D.rows() != ny() || D.cols() != nu() ||
        Dnu.rows() != ny() || Dnu.cols() != nnu() || d.size() != ny()) {
        throw std::invalid_argument("AffineModel: output equation dimensions");
    }
}

double AffineModel::spectral_radius() const {
    return A.eigenvalues().cwiseAbs().maxCoeff();
}

void MpcSpec::check_against(const AffineModel& m) const {
    if (N_p < 1 || N_c < 1 || N_c > N_p) {
        throw std::invalid_argument("MpcSpec: need 1 <= N_c <= N_p");
    }
    if (Q.rows() != m.ny() || Q.cols() != m.ny()) throw std::invalid_argument("MpcSpec: Q size");
    if (R.rows() != m.nu() || R.cols() != m.nu()) throw std::invalid_argument("MpcSpec: R size");
    if (R_delta.rows() != m.nu() || R_delta.cols() != m.nu()) {
        throw std::invalid_argument("MpcSpec: R_delta size");
    }
    if (y_r.size() != m.ny() || u_r.size() != m.nu() || x_r.size() != m.nx()) {
        throw std::invalid_argument("MpcSpec: reference sizes");
    }
    if (nu_r.size() != 0 && nu_r.size() != m.nnu()) {
        throw std::invalid_argument("MpcSpec: nu_r size");
    }
    if (H_x.rows() != h_x.size() || (H_x.rows() > 0 && H_x.cols() != m.nx())) {
        throw std::invalid_argument("MpcSpec: state constraint sizes");
    }
    if (H_u.rows() != h_u.size() || (H_u.rows() > 0 && H_u.cols() != m.nu())) {
        throw std::invalid_argument("MpcSpec: input constraint sizes");
    }
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(R);
    if (es.eigenvalues().minCoeff() <= 0) {
        throw std::invalid_argument("MpcSpec: R must be positive definite");
    }
}

Eigen::MatrixXd move_block_matrix(int N_p, int N_c, int n_u) {
    MatrixXd T = MatrixXd::Zero(N_p * n_u, N_c * n_u);
    for (int i = 0; i < N_p; ++i) {
        const int src = std::min(i, N_c - 1);
        T.block(i * n_u, src * n_u, n_u, n_u).setIdentity();
    }
    return T;
}

QpMpc condense(const AffineModel& model, const MpcSpec& spec,
               CondensationIntermediates* inter) {
    model.check_dims();
    spec.check_against(model);
    const int n = model.nx();
    const int nu = model.nu();
    const int nnu = model.nnu();
    const int ny = model.ny();
    const int N = spec.N_p;
    const int np = model.np();

    // Powers of A.
    std::vector<MatrixXd> Apow(N + 1);
    Apow[0] = MatrixXd::Identity(n, n);
    for (int i = 1; i <= N; ++i) Apow[i] = Apow[i - 1] * model.A;

    CondensationIntermediates ci;
    ci.Phi.setZero((N + 1) * n, n);
    ci.Gamma.setZero((N + 1) * n, N * nu);
    ci.Gamma_nu.setZero((N + 1) * n, nnu);
    ci.gamma.setZero((N + 1) * n);
    for (int i = 0; i <= N; ++i) {
        ci.Phi.block(i * n, 0, n, n) = Apow[i];
        MatrixXd acc = MatrixXd::Zero(n, n);  // sum_{j<i} A^j
        for (int j = 0; j < i; ++j) acc += Apow[j];
        ci.Gamma_nu.block(i * n, 0, n, nnu) = acc * model.Bnu;
        ci.gamma.segment(i * n, n) = acc * model.b;
        for (int j = 0; j < i; ++j) {
            ci.Gamma.block(i * n, j * nu, n, nu) = Apow[i - 1 - j] * model.B;
        }
    }

    ci.Cbar.setZero(N * ny, (N + 1) * n);
    for (int i = 0; i < N; ++i) ci.Cbar.block(i * ny, i * n, ny, n) = model.C;
    ci.Dbar.setZero(N * ny, N * nu);
    for (int i = 0; i < N; ++i) ci.Dbar.block(i * ny, i * nu, ny, nu) = model.D;
    ci.Dnu_stack.setZero(N * ny, nnu);
    ci.dbar.setZero(N * ny);
    ci.ybar_r.setZero(N * ny);
    for (int i = 0; i < N; ++i) {
        ci.Dnu_stack.block(i * ny, 0, ny, nnu) = model.Dnu;
        ci.dbar.segment(i * ny, ny) = model.d;
        ci.ybar_r.segment(i * ny, ny) = spec.y_r;
    }

    ci.Qbar.setZero(N * ny, N * ny);
    ci.Rbar.setZero(N * nu, N * nu);
    for (int i = 0; i < N; ++i) {
        ci.Qbar.block(i * ny, i * ny, ny, ny) = spec.Q;
        ci.Rbar.block(i * nu, i * nu, nu, nu) = spec.R;
    }
    // Difference-form weight M (x) R_delta; vacuous for a single-step horizon.
    ci.Rdbar.setZero(N * nu, N * nu);
    if (N >= 2) {
        MatrixXd M = MatrixXd::Zero(N, N);
        for (int i = 0; i < N; ++i) M(i, i) = (i == 0 || i == N - 1) ? 1.0 : 2.0;
        for (int i = 0; i + 1 < N; ++i) {
            M(i + 1, i) -= 1.0;
            M(i, i + 1) -= 1.0;
        }
        for (int i = 0; i < N; ++i) {
            for (int j = 0; j < N; ++j) {
                ci.Rdbar.block(i * nu, j * nu, nu, nu) = M(i, j) * spec.R_delta;
            }
        }
    }

    const MatrixXd S = ci.Cbar * ci.Gamma + ci.Dbar;
    const MatrixXd CPhi = ci.Cbar * ci.Phi;
    const MatrixXd CGnu = ci.Cbar * ci.Gamma_nu + ci.Dnu_stack;

    QpMpc qp;
    qp.n_u = nu;
    qp.N_p = N;
    qp.N_c = N;
    qp.n_p = np;
    qp.T = MatrixXd::Identity(N * nu, N * nu);
    qp.H = 2.0 * (S.transpose() * ci.Qbar * S + ci.Rbar + ci.Rdbar);
    qp.H = 0.5 * (qp.H + qp.H.transpose());  // enforce exact symmetry
    qp.F.setZero(N * nu, np);
    qp.F.leftCols(n) = 2.0 * S.transpose() * ci.Qbar * CPhi;
    qp.F.rightCols(nnu) = 2.0 * S.transpose() * ci.Qbar * CGnu;
    VectorXd u_track = VectorXd::Zero(N * nu);
    for (int i = 0; i < N; ++i) u_track.segment(i * nu, nu) = spec.R * spec.u_r;
    qp.c = 2.0 * S.transpose() * ci.Qbar * (ci.Cbar * ci.gamma + ci.dbar - ci.ybar_r) -
           2.0 * u_track;

    Eigen::SelfAdjointEigenSolver<MatrixXd> es(qp.H);
    if (es.eigenvalues().minCoeff() <= 0) {
        throw std::runtime_error(
            "condense: resulting Hessian not positive definite (min eigenvalue " +
            std::to_string(es.eigenvalues().minCoeff()) + ")");
    }

    // Lifted stage constraints over i = 0..N_p-1.
    const int mx = static_cast<int>(spec.H_x.rows());
    const int mu = static_cast<int>(spec.H_u.rows());
    ci.Hx_bar.setZero(N * mx, (N + 1) * n);
    ci.hx_bar.setZero(N * mx);
    for (int i = 0; i < N; ++i) {
        ci.Hx_bar.block(i * mx, i * n, mx, n) = spec.H_x;
        ci.hx_bar.segment(i * mx, mx) = spec.h_x;
    }
    ci.Hu_bar.setZero(N * mu, N * nu);
    ci.hu_bar.setZero(N * mu);
    for (int i = 0; i < N; ++i) {
        ci.Hu_bar.block(i * mu, i * nu, mu, nu) = spec.H_u;
        ci.hu_bar.segment(i * mu, mu) = spec.h_u;
    }

    const int q = N * mx + N * mu;
    qp.G.setZero(q, N * nu);
    qp.w.setZero(q);
    qp.K.setZero(q, np);
    if (mx > 0) {
        qp.G.topRows(N * mx) = ci.Hx_bar * ci.Gamma;
        qp.w.head(N * mx) = ci.hx_bar - ci.Hx_bar * ci.gamma;
        qp.K.topLeftCorner(N * mx, n) = -ci.Hx_bar * ci.Phi;
        qp.K.topRightCorner(N * mx, nnu) = -ci.Hx_bar * ci.Gamma_nu;
    }
    if (mu > 0) {
        qp.G.bottomRows(N * mu) = ci.Hu_bar;
        qp.w.tail(N * mu) = ci.hu_bar;
        // Input rows carry a zero K block.
    }

    if (inter) *inter = ci;
    return qp;
}

QpMpc move_block(const QpMpc& qp, int N_c, const Tolerances& tols) {
    if (N_c < 1 || N_c > qp.N_p) throw std::invalid_argument("move_block: N_c out of range");
    const MatrixXd T = move_block_matrix(qp.N_p, N_c, qp.n_u);
    QpMpc out;
    out.n_u = qp.n_u;
    out.N_p = qp.N_p;
    out.N_c = N_c;
    out.n_p = qp.n_p;
    out.T = T;
    out.H = T.transpose() * qp.H * T;
    out.H = 0.5 * (out.H + out.H.transpose());
    out.F = T.transpose() * qp.F;
    out.c = T.transpose() * qp.c;
    const MatrixXd Gt = qp.G * T;

    // Exact de-duplication on (G row, K row); among duplicates keep the
    // smallest offset w (the most binding one).
    std::map<std::vector<double>, int> seen;
    std::vector<int> keep;
    std::vector<double> woff;
    for (int i = 0; i < Gt.rows(); ++i) {
        std::vector<double> key;
        key.reserve(Gt.cols() + qp.K.cols());
        for (int j = 0; j < Gt.cols(); ++j) key.push_back(Gt(i, j));
        for (int j = 0; j < qp.K.cols(); ++j) key.push_back(qp.K(i, j));
        auto it = seen.find(key);
        if (it == seen.end()) {
            seen.emplace(std::move(key), static_cast<int>(keep.size()));
            keep.push_back(i);
            woff.push_back(qp.w(i));
        } else if (qp.w(i) < woff[it->second]) {
            keep[it->second] = i;
            woff[it->second] = qp.w(i);
        }
    }
    (void)tols;
    out.G.resize(static_cast<int>(keep.size()), Gt.cols());
    out.w.resize(static_cast<int>(keep.size()));
    out.K.resize(static_cast<int>(keep.size()), qp.K.cols());
    for (size_t r = 0; r < keep.size(); ++r) {
        out.G.row(static_cast<int>(r)) = Gt.row(keep[r]);
        out.w(static_cast<int>(r)) = woff[r];
        out.K.row(static_cast<int>(r)) = qp.K.row(keep[r]);
    }
    return out;
}

bool equilibrium_check(const AffineModel& model, const MpcSpec& spec, double rel_tol) {
    VectorXd nu_r = spec.nu_r;
    if (nu_r.size() == 0) nu_r = VectorXd::Zero(model.nnu());
    const VectorXd x_next =
        model.A * spec.x_r + model.B * spec.u_r + model.Bnu * nu_r + model.b;
    const VectorXd y = model.C * spec.x_r + model.D * spec.u_r + model.Dnu * nu_r + model.d;
    const double ex = (x_next - spec.x_r).norm() / (1.0 + spec.x_r.norm());
    const double ey = (y - spec.y_r).norm() / (1.0 + spec.y_r.norm());
    return ex <= rel_tol && ey <= rel_tol;
}

}  // namespace empcc::mpc
