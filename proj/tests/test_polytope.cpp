#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <random>

#include "empcc/polytope.hpp"

using namespace empcc;
using namespace empcc::poly;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec2(double a, double b) {
    VectorXd v(2);
    v << a, b;
    return v;
}

Polytope unit_square() { return Polytope::box(vec2(0, 0), vec2(1, 1)); }

}  // namespace

TEST_CASE("remove_redundant dominated row") {
    Polytope p;
    p.A.resize(3, 1);
    p.A << 1, 1, -1;
    p.b.resize(3);
    p.b << 1, 2, 0;
    const Polytope q = remove_redundant(p);
    CHECK(q.rows() == 2);
    // Point set preserved: x in [0,1].
    CHECK(q.contains(VectorXd::Constant(1, 0.5), 1e-9));
    CHECK(!q.contains(VectorXd::Constant(1, 1.5), 1e-9));
}

TEST_CASE("remove_redundant duplicated facet") {
    Polytope p = unit_square();
    Polytope dup = Polytope::stack(p, p);
    const Polytope q = remove_redundant(dup);
    CHECK(q.rows() == 4);
}

TEST_CASE("remove_redundant row tangent to a vertex") {
    // Triangle x>=0, y>=0, x+y<=1 plus the row x+2y <= 2 that touches no
    // vertex strictly: max over triangle of x+2y is 2 at (0,1), so the row is
    // implied (max == offset) and must be removed by the LP rule.
    Polytope p;
    p.A.resize(4, 2);
    p.A << -1, 0, 0, -1, 1, 1, 1, 2;
    p.b.resize(4);
    p.b << 0, 0, 1, 2;
    const Polytope q = remove_redundant(p);
    CHECK(q.rows() == 3);
}

TEST_CASE("remove_redundant idempotent and preserves membership") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> uni(-2.0, 2.0);
    Polytope p;
    p.A.resize(8, 2);
    p.b.resize(8);
    p.A << 1, 0, -1, 0, 0, 1, 0, -1, 1, 1, 1, 1, -1, 1, 2, 0;
    p.b << 1, 1, 1, 1, 1.5, 1.8, 1.5, 2.5;
    const Polytope q = remove_redundant(p);
    const Polytope q2 = remove_redundant(q);
    CHECK(q2.rows() == q.rows());
    for (int t = 0; t < 1000; ++t) {
        const VectorXd x = vec2(uni(rng), uni(rng));
        CHECK(p.contains(x, 1e-9) == q.contains(x, 1e-9));
    }
}

TEST_CASE("chebyshev unit square") {
    const ChebyshevResult c = chebyshev(unit_square());
    REQUIRE(c.status == ChebyshevResult::Status::Ok);
    CHECK(c.center(0) == doctest::Approx(0.5));
    CHECK(c.center(1) == doctest::Approx(0.5));
    CHECK(c.radius == doctest::Approx(0.5));
}

TEST_CASE("chebyshev degenerate 1d point") {
    Polytope p;
    p.A.resize(2, 1);
    p.A << 1, -1;
    p.b.setZero(2);
    const ChebyshevResult c = chebyshev(p);
    REQUIRE(c.status == ChebyshevResult::Status::Ok);
    CHECK(c.radius == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("chebyshev unit simplex") {
    Polytope p;
    p.A.resize(3, 2);
    p.A << -1, 0, 0, -1, 1, 1;
    p.b.resize(3);
    p.b << 0, 0, 1;
    const ChebyshevResult c = chebyshev(p);
    REQUIRE(c.status == ChebyshevResult::Status::Ok);
    CHECK(c.radius == doctest::Approx(1.0 / (2.0 + std::sqrt(2.0))).epsilon(1e-10));
}

TEST_CASE("chebyshev infeasible sentinel") {
    Polytope p;
    p.A.resize(2, 1);
    p.A << 1, -1;
    p.b.resize(2);
    p.b << -1, -1;
    const ChebyshevResult c = chebyshev(p);
    CHECK(c.status == ChebyshevResult::Status::Infeasible);
    CHECK(std::isinf(c.radius));
    CHECK(c.radius < 0);
}

TEST_CASE("vertices unit square") {
    const VertexSet v = vertices(unit_square());
    CHECK(v.size() == 4);
}

TEST_CASE("vertices 1d interval") {
    Polytope p;
    p.A.resize(2, 1);
    p.A << 1, -1;
    p.b.resize(2);
    p.b << -1, 2;  // [-2, -1]
    const VertexSet v = vertices(p);
    REQUIRE(v.size() == 2);
    const double lo = std::min(v[0](0), v[1](0));
    const double hi = std::max(v[0](0), v[1](0));
    CHECK(lo == doctest::Approx(-2.0));
    CHECK(hi == doctest::Approx(-1.0));
}

TEST_CASE("vertices box cut by halfspace") {
    Polytope p = unit_square();
    p.A.conservativeResize(5, 2);
    p.b.conservativeResize(5);
    p.A.row(4) << 1, 1;
    p.b(4) = 1.5;
    const VertexSet v = vertices(p);
    CHECK(v.size() == 5);
}

TEST_CASE("vertices rejects unbounded") {
    Polytope p;
    p.A.resize(2, 2);
    p.A << 1, 0, 0, 1;
    p.b.setOnes(2);
    CHECK_THROWS(vertices(p));
}

TEST_CASE("vertices round trip against H-form") {
    // Convex hull of returned vertices contains and is contained in P:
    // every vertex satisfies P, and every row of P is attained (supported)
    // by some vertex, so the hull equals P for bounded full-dim P.
    Polytope p;
    p.A.resize(5, 2);
    p.A << 1, 0, -1, 0, 0, 1, 0, -1, 1, 1;
    p.b.resize(5);
    p.b << 1, 1, 1, 1, 1.5;
    const VertexSet v = vertices(p);
    for (const auto& x : v) CHECK(p.contains(x, 1e-8));
    for (int i = 0; i < p.rows(); ++i) {
        double best = -1e300;
        for (const auto& x : v) best = std::max(best, p.A.row(i).dot(x));
        CHECK(best == doctest::Approx(p.b(i)).epsilon(1e-8));
    }
}

TEST_CASE("adjacency shared facet") {
    const Polytope a = unit_square();
    const Polytope b = Polytope::box(vec2(1, 0), vec2(2, 1));
    const AdjacencyResult r = are_adjacent(a, b);
    REQUIRE(r.kind == Adjacency::Adjacent);
    CHECK(std::abs(r.facet_normal(0)) == doctest::Approx(1.0));
    CHECK(std::abs(r.facet_offset) == doctest::Approx(1.0));
}

TEST_CASE("adjacency disjoint") {
    const Polytope a = unit_square();
    const Polytope b = Polytope::box(vec2(2, 2), vec2(3, 3));
    CHECK(are_adjacent(a, b).kind == Adjacency::Disjoint);
}

TEST_CASE("adjacency corner touch is not a facet") {
    const Polytope a = unit_square();
    const Polytope b = Polytope::box(vec2(1, 5), vec2(2, 6));
    CHECK(are_adjacent(a, b).kind == Adjacency::Disjoint);
}

TEST_CASE("adjacency corner point touch") {
    const Polytope a = unit_square();
    const Polytope b = Polytope::box(vec2(1, 1), vec2(2, 2));
    CHECK(are_adjacent(a, b).kind == Adjacency::Disjoint);
}

TEST_CASE("adjacency overlap") {
    const Polytope a = unit_square();
    const Polytope b = Polytope::box(vec2(0.5, 0), vec2(1.5, 1));
    CHECK(are_adjacent(a, b).kind == Adjacency::Overlapping);
}

TEST_CASE("union of two boxes is a box") {
    const Polytope a = unit_square();
    const Polytope b = Polytope::box(vec2(1, 0), vec2(2, 1));
    CHECK(union_is_convex(a, b));
}

TEST_CASE("union L-shape is not convex") {
    const Polytope a = unit_square();
    const Polytope b = Polytope::box(vec2(1, 0), vec2(2, 0.5));
    CHECK(!union_is_convex(a, b));
}

TEST_CASE("union of two triangles forming a square") {
    Polytope t1;  // x>=0, y<=1, y>=x
    t1.A.resize(3, 2);
    t1.A << -1, 0, 0, 1, 1, -1;
    t1.b.resize(3);
    t1.b << 0, 1, 0;
    Polytope t2;  // x<=1, y>=0, y<=x
    t2.A.resize(3, 2);
    t2.A << 1, 0, 0, -1, -1, 1;
    t2.b.resize(3);
    t2.b << 1, 0, 0;
    CHECK(union_is_convex(t1, t2));
}

TEST_CASE("union convexity agrees with dense grid oracle in 2d") {
    // Brute-force oracle: union is convex iff no envelope grid point falls
    // outside both polytopes.
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> uni(0.2, 1.2);
    int checked = 0;
    for (int t = 0; t < 25; ++t) {
        const double w = uni(rng), h = uni(rng), h2 = uni(rng), w2 = uni(rng);
        const Polytope a = Polytope::box(vec2(0, 0), vec2(w, h));
        const Polytope b = Polytope::box(vec2(w, 0), vec2(w + w2, h2));
        if (are_adjacent(a, b).kind != Adjacency::Adjacent) continue;
        ++checked;
        const bool claim = union_is_convex(a, b);
        const Polytope env = envelope(a, b);
        // Counterexample pieces are bounded by facet lines, so sampling a
        // uniform grid plus the midpoints between facet coordinates is enough.
        std::vector<double> xs, ys;
        for (int i = 0; i <= 120; ++i) xs.push_back(-0.1 + (w + w2 + 0.2) * i / 120.0);
        for (int j = 0; j <= 120; ++j) ys.push_back(-0.1 + 1.6 * j / 120.0);
        const double xf[] = {0.0, w, w + w2};
        const double yf[] = {0.0, h, h2};
        for (double u : xf)
            for (double v : xf) xs.push_back(0.5 * (u + v));
        for (double u : yf)
            for (double v : yf) ys.push_back(0.5 * (u + v));
        bool oracle = true;
        for (double px : xs) {
            for (double py : ys) {
                const VectorXd x = vec2(px, py);
                if (env.contains(x, -1e-9) && !a.contains(x, 1e-9) && !b.contains(x, 1e-9)) {
                    oracle = false;
                    break;
                }
            }
            if (!oracle) break;
        }
        CHECK(claim == oracle);
    }
    CHECK(checked > 10);
}
