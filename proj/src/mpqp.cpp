#include "empcc/mpqp.hpp"

#include <algorithm>
#include <cmath>

#include "empcc/lp.hpp"
#include "empcc/qp.hpp"

namespace empcc::mpqp {

using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

// splitmix64; fixed-width deterministic generator for samplers.
inline std::uint64_t next_u64(std::uint64_t& s) {
    s += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = s;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline double next_unit(std::uint64_t& s) {
    return static_cast<double>(next_u64(s) >> 11) * 0x1.0p-53;
}

void enumerate_subsets(int q, int max_size,
                       const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> subset;
    // Depth-first in lexicographic order grouped by size.
    for (int size = 0; size <= max_size; ++size) {
        subset.assign(size, 0);
        if (size == 0) {
            fn(subset);
            continue;
        }
        for (int i = 0; i < size; ++i) subset[i] = i;
        if (size > q) break;
        while (true) {
            fn(subset);
            int i = size - 1;
            while (i >= 0 && subset[i] == q - size + i) --i;
            if (i < 0) break;
            ++subset[i];
            for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
        }
    }
}

}  // namespace

PwaController solve_mpqp(const mpc::QpMpc& qp, const poly::Polytope& domain,
                         MpqpStats* stats, const Tolerances& tols) {
    const int nd = qp.n_dec();
    const int q = qp.n_rows();
    const int np = qp.n_p;
    if (domain.dim() != np) throw std::invalid_argument("solve_mpqp: domain dimension");
    {
        const poly::ChebyshevResult ch = poly::chebyshev(domain, tols);
        if (ch.status != poly::ChebyshevResult::Status::Ok || ch.radius <= tols.full_dim) {
            throw std::invalid_argument("solve_mpqp: domain must be bounded and full-dimensional");
        }
    }

    Eigen::LLT<MatrixXd> llt(qp.H);
    if (llt.info() != Eigen::Success) {
        throw std::invalid_argument("solve_mpqp: H not positive definite");
    }
    const MatrixXd HiF = llt.solve(qp.F);
    const VectorXd Hic = llt.solve(qp.c);

    PwaController ctrl;
    ctrl.domain = poly::normalize(domain, tols);
    ctrl.n_u = qp.n_u;
    ctrl.n_p = np;

    MpqpStats st;
    enumerate_subsets(q, nd, [&](const std::vector<int>& act) {
        ++st.enumerated;
        const int k = static_cast<int>(act.size());
        MatrixXd U;      // u(p) = U p + u0
        VectorXd u0;
        MatrixXd Llam;   // lambda(p) = Llam p + l0
        VectorXd l0;
        if (k == 0) {
            U = -HiF;
            u0 = -Hic;
        } else {
            MatrixXd Ga(k, nd);
            MatrixXd Ka(k, np);
            VectorXd wa(k);
            for (int i = 0; i < k; ++i) {
                Ga.row(i) = qp.G.row(act[i]);
                Ka.row(i) = qp.K.row(act[i]);
                wa(i) = qp.w(act[i]);
            }
            Eigen::FullPivLU<MatrixXd> lu_g(Ga);
            lu_g.setThreshold(1e-10);
            if (lu_g.rank() < k) {
                ++st.degenerate_skipped;
                return;
            }
            const MatrixXd HiGt = llt.solve(Ga.transpose());
            const MatrixXd Schur = Ga * HiGt;
            Eigen::LDLT<MatrixXd> sll(Schur);
            if (sll.info() != Eigen::Success) {
                ++st.degenerate_skipped;
                return;
            }
            // lambda(p) = Schur^{ -1 } (G_A u_unc(p) - w_A - K_A p)
            Llam = sll.solve(Ga * (-HiF) - Ka);
            l0 = sll.solve(Ga * (-Hic) - wa);
            U = -HiF - HiGt * Llam;
            u0 = -Hic - HiGt * l0;
        }

        // Critical region: inactive feasibility plus multiplier nonnegativity.
        const int n_inact = q - k;
        MatrixXd Rr(n_inact + k + ctrl.domain.rows(), np);
        VectorXd rq(n_inact + k + ctrl.domain.rows());
        int row = 0;
        for (int i = 0; i < q; ++i) {
            if (std::binary_search(act.begin(), act.end(), i)) continue;
            Rr.row(row) = qp.G.row(i) * U - qp.K.row(i);
            rq(row) = qp.w(i) - qp.G.row(i).dot(u0);
            ++row;
        }
        for (int i = 0; i < k; ++i) {
            Rr.row(row) = -Llam.row(i);
            rq(row) = l0(i);
            ++row;
        }
        Rr.bottomRows(ctrl.domain.rows()) = ctrl.domain.A;
        rq.tail(ctrl.domain.rows()) = ctrl.domain.b;

        poly::Polytope cr{Rr, rq};
        cr = poly::normalize(cr, tols);
        const poly::ChebyshevResult ch = poly::chebyshev(cr, tols);
        if (ch.status != poly::ChebyshevResult::Status::Ok || ch.radius <= tols.full_dim) {
            return;  // empty or lower-dimensional
        }
        Region reg;
        reg.region = poly::remove_redundant(cr, tols);
        reg.gain = U.topRows(qp.n_u);
        reg.offset = u0.head(qp.n_u);
        reg.active_set = act;
        ctrl.regions.push_back(std::move(reg));
        ++st.kept;
    });
    if (stats) *stats = st;
    return ctrl;
}

int locate(const PwaController& ctrl, const VectorXd& p, const Tolerances& tols) {
    const double scale = 1.0 + p.lpNorm<Eigen::Infinity>();
    for (size_t i = 0; i < ctrl.regions.size(); ++i) {
        if (ctrl.regions[i].region.contains(p, tols.containment * scale)) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

VectorXd eval(const PwaController& ctrl, const VectorXd& p, const Tolerances& tols) {
    const double scale = 1.0 + p.lpNorm<Eigen::Infinity>();
    if (!ctrl.domain.contains(p, tols.containment * scale)) {
        throw OutOfDomain("eval: parameter outside controller domain");
    }
    const int i = locate(ctrl, p, tols);
    if (i < 0) throw Uncovered("eval: no region contains the parameter");
    return ctrl.regions[i].gain * p + ctrl.regions[i].offset;
}

DomainSampler::DomainSampler(const poly::Polytope& domain, const Tolerances& tols)
    : domain_(domain), tol_(tols.feasibility) {
    const int n = domain.dim();
    lo_.resize(n);
    hi_.resize(n);
    for (int j = 0; j < n; ++j) {
        Eigen::VectorXd cvec = Eigen::VectorXd::Zero(n);
        cvec(j) = 1.0;
        poly::LpProblem up{-cvec, domain.A, domain.b};
        poly::LpProblem dn{cvec, domain.A, domain.b};
        const auto ru = poly::solve_lp(up, tols);
        const auto rd = poly::solve_lp(dn, tols);
        if (ru.status != poly::LpStatus::Optimal || rd.status != poly::LpStatus::Optimal) {
            throw std::invalid_argument("DomainSampler: domain must be bounded");
        }
        hi_(j) = ru.x(j);
        lo_(j) = rd.x(j);
    }
}

VectorXd DomainSampler::operator()(std::uint64_t& state) const {
    const int n = domain_.dim();
    VectorXd p(n);
    for (int attempt = 0; attempt < 100000; ++attempt) {
        for (int j = 0; j < n; ++j) {
            p(j) = lo_(j) + (hi_(j) - lo_(j)) * next_unit(state);
        }
        if (domain_.contains(p, tol_)) return p;
    }
    throw std::runtime_error("DomainSampler: rejection sampling failed");
}

VerifyReport verify_against_qp(const PwaController& ctrl, const mpc::QpMpc& qp,
                               int samples, std::uint64_t seed, const Tolerances& tols) {
    VerifyReport rep;
    rep.samples = samples;
    DomainSampler sampler(ctrl.domain, tols);
    std::uint64_t state = seed;
    for (int s = 0; s < samples; ++s) {
        const VectorXd p = sampler(state);
        const int i = locate(ctrl, p, tols);
        if (i < 0) {
            ++rep.uncovered;
            rep.worst_p = p;
            continue;
        }
        const VectorXd u_pwa = ctrl.regions[i].gain * p + ctrl.regions[i].offset;
        poly::QpProblem prob;
        prob.H = qp.H;
        prob.f = qp.F * p + qp.c;
        prob.G = qp.G;
        prob.w = qp.w + qp.K * p;
        const poly::QpResult qr = poly::solve_qp(prob, tols);
        if (qr.status != poly::QpStatus::Optimal) {
            ++rep.uncovered;
            rep.worst_p = p;
            continue;
        }
        const double err = (u_pwa - qr.u.head(qp.n_u)).lpNorm<Eigen::Infinity>();
        if (err > rep.max_abs_err) {
            rep.max_abs_err = err;
            rep.worst_p = p;
        }
    }
    return rep;
}

}  // namespace empcc::mpqp
