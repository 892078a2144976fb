#include <Eigen/Dense>

#include <future>
#include <random>

#include "hrings/gluing.hpp"

namespace hrings {

namespace {

// (z-exponent, (1-z)-exponent) per tetrahedron after rewriting q1, q0
// through the primary variable; used only to pick an independent subsystem.
IntMatrix reduced_rows(const GluingSystem& gs) {
    const int n = gs.sa.tets;
    IntMatrix m(static_cast<int>(gs.equations.size()), 2 * n);
    for (size_t k = 0; k < gs.equations.size(); ++k) {
        const auto& e = gs.equations[k].exponents;
        for (int t = 0; t < n; ++t) {
            long a = e[3 * t + 2], b = e[3 * t + 1], c = e[3 * t];
            m.at(static_cast<int>(k), 2 * t) = a - c;
            m.at(static_cast<int>(k), 2 * t + 1) = c - b;
        }
    }
    return m;
}

int rank_of(const IntMatrix& m) {
    SnfResult s = smith_normal_form(m);
    int r = 0;
    for (int i = 0; i < std::min(m.rows(), m.cols()); ++i)
        if (s.d.at(i, i) != 0) ++r;
    return r;
}

struct Attempt {
    bool ok = false;
    SolvePoint point;
};

Attempt newton_attempt(const GluingSystem& gs, const std::vector<int>& eqs, int nfree,
                       std::vector<cplx> z, const SolveOptions& opts, int seed_index) {
    const int n = gs.sa.tets;
    const int m = static_cast<int>(eqs.size());
    auto eval_eq = [&](int k, const std::vector<cplx>& zz) {
        const auto& e = gs.equations[k].exponents;
        cplx prod = 1.0;
        for (int t = 0; t < n; ++t) {
            long a = e[3 * t + 2], b = e[3 * t + 1], c = e[3 * t];
            if (a) prod *= std::pow(zz[t], static_cast<double>(a));
            if (b) prod *= std::pow(1.0 - zz[t], static_cast<double>(-b));
            if (c) prod *= std::pow(1.0 - 1.0 / zz[t], static_cast<double>(c));
        }
        return prod - 1.0;
    };

    for (int it = 0; it < opts.max_iter; ++it) {
        for (int t = 0; t < n; ++t)
            if (std::abs(z[t]) < 1e-10 || std::abs(z[t] - 1.0) < 1e-10) return {};
        Eigen::VectorXcd F(m);
        double fnorm = 0;
        for (int k = 0; k < m; ++k) {
            F(k) = eval_eq(eqs[k], z);
            fnorm = std::max(fnorm, std::abs(F(k)));
        }
        if (fnorm < opts.tol) {
            SolvePoint pt;
            pt.params = derive_params(gs, z);
            pt.resid = residual(gs, pt.params);
            pt.isolated = nfree == n;
            pt.seed_index = seed_index;
            if (pt.resid >= opts.tol * 10) return {};
            for (const auto& p : pt.params)
                if (std::abs(p) <= opts.tol || std::abs(p - 1.0) <= opts.tol) return {};
            return {true, std::move(pt)};
        }
        Eigen::MatrixXcd J(m, nfree);
        for (int k = 0; k < m; ++k) {
            const auto& e = gs.equations[eqs[k]].exponents;
            cplx Ek = F(k) + 1.0;
            for (int t = 0; t < nfree; ++t) {
                long a = e[3 * t + 2], b = e[3 * t + 1], c = e[3 * t];
                cplx dlog = 0.0;
                if (a) dlog += static_cast<double>(a) / z[t];
                if (b) dlog += static_cast<double>(b) / (1.0 - z[t]);
                if (c) dlog += static_cast<double>(c) / (z[t] * (z[t] - 1.0));
                J(k, t) = Ek * dlog;
            }
        }
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(J);
        Eigen::VectorXcd step = lu.solve(-F);
        if (!step.allFinite()) return {};
        double slen = step.norm();
        if (slen > 10.0) step *= 10.0 / slen;  // damp wild steps
        for (int t = 0; t < nfree; ++t) z[t] += step(t);
    }
    return {};
}

}  // namespace

std::vector<SolvePoint> solve_numeric(const GluingSystem& gs, const SolveOptions& opts) {
    if (gs.degenerate)
        throw TriError("solve_numeric: degenerate gluing system (empty deformation variety)");
    const int n = gs.sa.tets;

    // greedy independent subset of the equations
    IntMatrix rows = reduced_rows(gs);
    std::vector<int> chosen;
    IntMatrix acc(0, rows.cols());
    int cur_rank = 0;
    for (int k = 0; k < rows.rows(); ++k) {
        IntMatrix trial(static_cast<int>(chosen.size()) + 1, rows.cols());
        for (size_t i = 0; i < chosen.size(); ++i)
            for (int j = 0; j < rows.cols(); ++j) trial.at(static_cast<int>(i), j) = rows.at(chosen[i], j);
        for (int j = 0; j < rows.cols(); ++j)
            trial.at(static_cast<int>(chosen.size()), j) = rows.at(k, j);
        int r = rank_of(trial);
        if (r > cur_rank) {
            chosen.push_back(k);
            cur_rank = r;
        }
    }
    (void)acc;
    int m = static_cast<int>(chosen.size());
    int nfree = std::min(m, n);

    auto seed_for = [&](int idx) {
        std::vector<cplx> z(n, cplx(0, 1));
        if (idx > 0) {
            std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(idx) * 0x9e3779b97f4a7c15ULL);
            std::uniform_real_distribution<double> mod(0.3, 3.0), arg(0.0, 6.283185307179586);
            for (int t = 0; t < n; ++t) {
                cplx v;
                do {
                    v = std::polar(mod(rng), arg(rng));
                } while (std::abs(v) < 1e-3 || std::abs(v - 1.0) < 1e-3 ||
                         std::abs(v.imag()) > 3.0);
                z[t] = v;
            }
        }
        return z;
    };

    std::vector<std::future<Attempt>> futs;
    for (int idx = 0; idx <= opts.retries; ++idx)
        futs.push_back(std::async(std::launch::async, [&, idx] {
            return newton_attempt(gs, chosen, nfree, seed_for(idx), opts, idx);
        }));
    std::vector<SolvePoint> out;
    for (auto& f : futs) {
        Attempt a = f.get();
        if (a.ok) out.push_back(std::move(a.point));
    }
    std::sort(out.begin(), out.end(),
              [](const SolvePoint& a, const SolvePoint& b) { return a.seed_index < b.seed_index; });
    return out;
}

}  // namespace hrings
