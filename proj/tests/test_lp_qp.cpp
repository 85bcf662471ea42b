#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <random>

#include "empcc/lp.hpp"
#include "empcc/qp.hpp"

using namespace empcc;
using namespace empcc::poly;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

LpProblem make_lp(const MatrixXd& A, const VectorXd& b, const VectorXd& c) {
    return LpProblem{c, A, b};
}

}  // namespace

TEST_CASE("lp box corner") {
    // min x s.t. 0 <= x <= 1
    MatrixXd A(2, 1);
    A << 1, -1;
    VectorXd b(2);
    b << 1, 0;
    VectorXd c(1);
    c << 1;
    const LpResult r = solve_lp(make_lp(A, b, c));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x(0) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(r.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("lp infeasible") {
    MatrixXd A(2, 1);
    A << 1, -1;
    VectorXd b(2);
    b << -1, -1;  // x <= -1 and x >= 1
    VectorXd c(1);
    c << 1;
    CHECK(solve_lp(make_lp(A, b, c)).status == LpStatus::Infeasible);
}

TEST_CASE("lp unit square corner by monotonicity") {
    MatrixXd A(4, 2);
    A << 1, 0, -1, 0, 0, 1, 0, -1;
    VectorXd b(4);
    b << 1, 0, 1, 0;
    VectorXd c(2);
    c << -1, -1;
    const LpResult r = solve_lp(make_lp(A, b, c));
    REQUIRE(r.status == LpStatus::Optimal);
    CHECK(r.x(0) == doctest::Approx(1.0));
    CHECK(r.x(1) == doctest::Approx(1.0));
    CHECK(r.value == doctest::Approx(-2.0));
}

TEST_CASE("lp unbounded") {
    MatrixXd A(1, 1);
    A << 1;
    VectorXd b(1);
    b << 1;
    VectorXd c(1);
    c << 1;  // min x with only x <= 1
    CHECK(solve_lp(make_lp(A, b, c)).status == LpStatus::Unbounded);
}

TEST_CASE("lp duality on random instances") {
    // Primal feasibility, dual nonnegativity, stationarity, complementary
    // slackness within 1e-8 on normalized data.
    std::mt19937_64 rng(12345);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int solved = 0;
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int m = n + 1 + static_cast<int>(rng() % 8);
        MatrixXd A(m, n);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < n; ++j) A(i, j) = gauss(rng);
            const double nr = A.row(i).norm();
            if (nr > 1e-12) A.row(i) /= nr;
        }
        VectorXd interior(n);
        for (int j = 0; j < n; ++j) interior(j) = gauss(rng);
        VectorXd b = A * interior;
        for (int i = 0; i < m; ++i) b(i) += 0.1 + std::abs(gauss(rng));
        VectorXd c(n);
        for (int j = 0; j < n; ++j) c(j) = gauss(rng);
        const LpResult r = solve_lp(make_lp(A, b, c));
        if (r.status != LpStatus::Optimal) continue;  // unbounded draws are fine
        ++solved;
        CHECK((A * r.x - b).maxCoeff() <= 1e-8);
        CHECK(r.dual.minCoeff() >= -1e-8);
        CHECK((c + A.transpose() * r.dual).lpNorm<Eigen::Infinity>() <= 1e-8);
        for (int i = 0; i < m; ++i) {
            CHECK(std::abs(r.dual(i) * (A.row(i).dot(r.x) - b(i))) <= 1e-8);
        }
    }
    CHECK(solved > 50);
}

TEST_CASE("qp clipped unconstrained optimum") {
    // min 1/2 u^2 - u s.t. u <= 0 -> u = 0, active set {0}
    QpProblem qp;
    qp.H = MatrixXd::Identity(1, 1);
    qp.f = VectorXd::Constant(1, -1.0);
    qp.G = MatrixXd::Identity(1, 1);
    qp.w = VectorXd::Zero(1);
    const QpResult r = solve_qp(qp);
    REQUIRE(r.status == QpStatus::Optimal);
    CHECK(r.u(0) == doctest::Approx(0.0).epsilon(1e-12));
    REQUIRE(r.active_set.size() == 1);
    CHECK(r.active_set[0] == 0);
    CHECK(r.multipliers(0) == doctest::Approx(1.0));
}

TEST_CASE("qp unconstrained stationarity") {
    QpProblem qp;
    qp.H = MatrixXd::Identity(1, 1);
    qp.f = VectorXd::Constant(1, -1.0);
    qp.G.resize(0, 1);
    qp.w.resize(0);
    const QpResult r = solve_qp(qp);
    REQUIRE(r.status == QpStatus::Optimal);
    CHECK(r.u(0) == doctest::Approx(1.0));
}

TEST_CASE("qp equality-by-hand KKT") {
    // min 1/2(u1^2+u2^2) - u1 - u2 s.t. u1 + u2 <= 1 -> (0.5, 0.5)
    QpProblem qp;
    qp.H = MatrixXd::Identity(2, 2);
    qp.f = VectorXd::Constant(2, -1.0);
    qp.G.resize(1, 2);
    qp.G << 1, 1;
    qp.w = VectorXd::Constant(1, 1.0);
    const QpResult r = solve_qp(qp);
    REQUIRE(r.status == QpStatus::Optimal);
    CHECK(r.u(0) == doctest::Approx(0.5));
    CHECK(r.u(1) == doctest::Approx(0.5));
    REQUIRE(r.active_set.size() == 1);
    CHECK(r.multipliers(0) == doctest::Approx(0.5));
}

TEST_CASE("qp infeasible") {
    QpProblem qp;
    qp.H = MatrixXd::Identity(1, 1);
    qp.f = VectorXd::Zero(1);
    qp.G.resize(2, 1);
    qp.G << 1, -1;
    qp.w.resize(2);
    qp.w << -1, -1;
    CHECK(solve_qp(qp).status == QpStatus::Infeasible);
}

TEST_CASE("qp kkt conditions on random instances") {
    std::mt19937_64 rng(777);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + static_cast<int>(rng() % 4);
        const int m = 1 + static_cast<int>(rng() % 10);
        MatrixXd M(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) M(i, j) = gauss(rng);
        QpProblem qp;
        qp.H = M * M.transpose() + 0.2 * MatrixXd::Identity(n, n);
        qp.f.resize(n);
        for (int j = 0; j < n; ++j) qp.f(j) = gauss(rng);
        qp.G.resize(m, n);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) qp.G(i, j) = gauss(rng);
        VectorXd x0(n);
        for (int j = 0; j < n; ++j) x0(j) = gauss(rng);
        qp.w = qp.G * x0;
        for (int i = 0; i < m; ++i) qp.w(i) += 0.05 + std::abs(gauss(rng));
        const QpResult r = solve_qp(qp);
        REQUIRE(r.status == QpStatus::Optimal);
        CHECK((qp.G * r.u - qp.w).maxCoeff() <= 1e-8);
        // Stationarity: H u + f + G_A' lambda = 0.
        VectorXd grad = qp.H * r.u + qp.f;
        for (size_t k = 0; k < r.active_set.size(); ++k) {
            grad += r.multipliers(static_cast<int>(k)) * qp.G.row(r.active_set[k]).transpose();
        }
        CHECK(grad.lpNorm<Eigen::Infinity>() <= 1e-7);
        CHECK((r.multipliers.size() == 0 || r.multipliers.minCoeff() >= -1e-10));
    }
}
