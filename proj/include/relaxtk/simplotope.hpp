#pragma once

#include <string>

#include "relaxtk/model.hpp"

namespace relaxtk {

// Per-dimension breakpoints a_i0 < ... < a_in plus the subsequence tau of
// breakpoint indices that carry binary variables. Cells of dimension i are
// the intervals [a_{i,tau(t-1)}, a_{i,tau(t)}], t = 1..l_i.
struct DiscretizationScheme {
    std::vector<std::vector<double>> a;
    std::vector<std::vector<int>> tau;

    int d() const { return static_cast<int>(a.size()); }
    int n() const { return a.empty() ? 0 : static_cast<int>(a[0].size()) - 1; }
    int cells(int i) const { return static_cast<int>(tau[static_cast<size_t>(i)].size()) - 1; }

    double breakpoint(int i, int j) const { return a[static_cast<size_t>(i)][static_cast<size_t>(j)]; }
    int tau_at(int i, int t) const { return tau[static_cast<size_t>(i)][static_cast<size_t>(t)]; }

    Interval cell_interval(int i, int t) const {  // t is 1-based
        return {breakpoint(i, tau_at(i, t - 1)), breakpoint(i, tau_at(i, t))};
    }

    // smallest k with tau(i,k) >= j
    int theta(int i, int j) const {
        for (int k = 0; k <= cells(i); ++k)
            if (tau_at(i, k) >= j) return k;
        throw Error("theta: index out of range");
    }

    void validate() const {
        if (a.empty()) throw Error("scheme: no dimensions");
        size_t len = a[0].size();
        if (len < 2) throw Error("scheme: need at least two breakpoints");
        if (a.size() != tau.size()) throw Error("scheme: a/tau dimension mismatch");
        for (size_t i = 0; i < a.size(); ++i) {
            if (a[i].size() != len)
                throw Error("scheme: unequal breakpoint counts across dimensions");
            for (size_t j = 1; j < a[i].size(); ++j)
                if (!(a[i][j] > a[i][j - 1]))
                    throw Error("scheme: breakpoints must be strictly increasing");
            const auto& t = tau[i];
            if (t.empty() || t.front() != 0 || t.back() != static_cast<int>(len) - 1)
                throw Error("scheme: tau must start at 0 and end at n");
            for (size_t k = 1; k < t.size(); ++k)
                if (!(t[k] > t[k - 1])) throw Error("scheme: tau must be strictly increasing");
        }
    }

    static DiscretizationScheme with_identity_tau(std::vector<std::vector<double>> breakpoints) {
        DiscretizationScheme s;
        s.a = std::move(breakpoints);
        for (const auto& ai : s.a) {
            std::vector<int> t(ai.size());
            for (size_t j = 0; j < ai.size(); ++j) t[j] = static_cast<int>(j);
            s.tau.push_back(std::move(t));
        }
        s.validate();
        return s;
    }
};

// One cell index per dimension (1-based); identifies a face Delta_H.
struct SimplotopeFace {
    std::vector<int> cell;

    // chain fixings induced on dimension i: 1 for j <= tau(i,t-1), 0 for j > tau(i,t)
    int fixed_one_upto(const DiscretizationScheme& s, int i) const {
        return s.tau_at(i, cell[static_cast<size_t>(i)] - 1);
    }
    int fixed_zero_after(const DiscretizationScheme& s, int i) const {
        return s.tau_at(i, cell[static_cast<size_t>(i)]);
    }
};

inline int cell_of(const DiscretizationScheme& s, int i, double value) {
    for (int t = 1; t <= s.cells(i); ++t) {
        Interval c = s.cell_interval(i, t);
        if (value <= c.hi + 1e-12) return t;
    }
    return s.cells(i);
}

// v_ij = (a_i0, ..., a_{i,j-1}, a_ij, ..., a_ij): component k is a_{i,min(k,j)}
inline std::vector<std::vector<double>> q_vertices(const DiscretizationScheme& s, int i) {
    int n = s.n();
    std::vector<std::vector<double>> v(static_cast<size_t>(n) + 1,
                                       std::vector<double>(static_cast<size_t>(n) + 1));
    for (int j = 0; j <= n; ++j)
        for (int k = 0; k <= n; ++k)
            v[static_cast<size_t>(j)][static_cast<size_t>(k)] = s.breakpoint(i, std::min(k, j));
    return v;
}

inline std::vector<double> z_from_s(const DiscretizationScheme& s, int i,
                                    const std::vector<double>& si) {
    int n = s.n();
    if (static_cast<int>(si.size()) != n + 1) throw Error("z_from_s: length mismatch");
    if (std::abs(si[0] - s.breakpoint(i, 0)) > 1e-9)
        throw Error("z_from_s: s_i0 must equal a_i0");
    std::vector<double> z(static_cast<size_t>(n) + 1);
    z[0] = 1.0;
    for (int j = 1; j <= n; ++j)
        z[static_cast<size_t>(j)] = (si[static_cast<size_t>(j)] - si[static_cast<size_t>(j) - 1]) /
                                    (s.breakpoint(i, j) - s.breakpoint(i, j - 1));
    return z;
}

inline std::vector<double> s_from_z(const DiscretizationScheme& s, int i,
                                    const std::vector<double>& zi) {
    int n = s.n();
    if (static_cast<int>(zi.size()) != n + 1) throw Error("s_from_z: length mismatch");
    if (std::abs(zi[0] - 1.0) > 1e-9) throw Error("s_from_z: z_i0 must equal 1");
    std::vector<double> si(static_cast<size_t>(n) + 1);
    si[0] = s.breakpoint(i, 0);
    for (int j = 1; j <= n; ++j)
        si[static_cast<size_t>(j)] = si[static_cast<size_t>(j) - 1] +
                                     zi[static_cast<size_t>(j)] *
                                         (s.breakpoint(i, j) - s.breakpoint(i, j - 1));
    return si;
}

// Incremental-formulation block materialized into a model. z_{i0} is folded
// away as the constant 1; delta_{i0} = 1 and delta_{i,l_i} = 0 likewise.
struct IncBlock {
    std::vector<std::vector<int>> z;      // z[i][j-1] is the var index of z_ij, j = 1..n
    std::vector<std::vector<int>> delta;  // delta[i][t-1] is delta_it, t = 1..l_i-1

    int z_var(int i, int j) const { return z[static_cast<size_t>(i)][static_cast<size_t>(j) - 1]; }
    int delta_var(int i, int t) const {
        return delta[static_cast<size_t>(i)][static_cast<size_t>(t) - 1];
    }

    // f_i = a_i0 + sum_j (a_ij - a_{ij-1}) z_ij
    LinExpr f_expr(const DiscretizationScheme& s, int i) const {
        LinExpr e(s.breakpoint(i, 0));
        for (int j = 1; j <= s.n(); ++j)
            e.add(z_var(i, j), s.breakpoint(i, j) - s.breakpoint(i, j - 1));
        return e;
    }
};

inline IncBlock add_incremental_formulation(ModelIR& m, const DiscretizationScheme& s,
                                            const std::string& prefix,
                                            const std::vector<int>& f_vars = {},
                                            bool binary_delta = true) {
    s.validate();
    IncBlock blk;
    int n = s.n();
    for (int i = 0; i < s.d(); ++i) {
        std::vector<int> zi;
        for (int j = 1; j <= n; ++j)
            zi.push_back(m.add_var(prefix + "z_" + std::to_string(i + 1) + "_" + std::to_string(j),
                                   VarKind::Continuous, 0.0, 1.0));
        blk.z.push_back(zi);
        std::vector<int> di;
        for (int t = 1; t < s.cells(i); ++t)
            di.push_back(m.add_var(prefix + "d_" + std::to_string(i + 1) + "_" + std::to_string(t),
                                   binary_delta ? VarKind::Binary : VarKind::Continuous, 0.0, 1.0));
        blk.delta.push_back(di);

        // chain 1 >= z_1 >= ... >= z_n >= 0 with delta_t wedged between
        // z_{tau(t)} and z_{tau(t)+1}; the delta rows subsume those links.
        std::vector<bool> interleaved(static_cast<size_t>(n), false);
        for (int t = 1; t < s.cells(i); ++t) {
            int j = s.tau_at(i, t);
            interleaved[static_cast<size_t>(j)] = true;  // pair (z_j, z_{j+1})
            LinExpr up = LinExpr::var(blk.z_var(i, j)) - LinExpr::var(blk.delta_var(i, t));
            m.add_con(up, Sense::GE, 0.0);  // z_{tau(t)} >= delta_t
            if (j + 1 <= n) {
                LinExpr dn = LinExpr::var(blk.delta_var(i, t)) - LinExpr::var(blk.z_var(i, j + 1));
                m.add_con(dn, Sense::GE, 0.0);  // delta_t >= z_{tau(t)+1}
            }
        }
        for (int j = 1; j < n; ++j) {
            if (interleaved[static_cast<size_t>(j)]) continue;
            LinExpr e = LinExpr::var(blk.z_var(i, j)) - LinExpr::var(blk.z_var(i, j + 1));
            m.add_con(e, Sense::GE, 0.0);
        }
        if (!f_vars.empty()) {
            LinExpr link = blk.f_expr(s, i) - LinExpr::var(f_vars[static_cast<size_t>(i)]);
            m.add_con(link, Sense::EQ, 0.0);
        }
    }
    return blk;
}

namespace detail {
inline unsigned gray_code(unsigned t) { return t ^ (t >> 1); }
}

// Logarithmic (SOS2 / Gray code) formulation in z-space; requires tau to be
// the identity. Uses the reflected binary code eta^{(t)} = gray(t-1).
inline IncBlock add_log_formulation(ModelIR& m, const DiscretizationScheme& s,
                                    const std::string& prefix,
                                    const std::vector<int>& f_vars = {},
                                    bool binary_delta = true) {
    s.validate();
    int n = s.n();
    for (int i = 0; i < s.d(); ++i)
        if (s.cells(i) != n)
            throw Error("log formulation requires tau = identity (all breakpoints discretized)");
    int nbits = 1;
    while ((1 << nbits) < n) ++nbits;
    if (n == 1) nbits = 0;

    IncBlock blk;
    for (int i = 0; i < s.d(); ++i) {
        std::vector<int> zi;
        for (int j = 1; j <= n; ++j)
            zi.push_back(m.add_var(prefix + "z_" + std::to_string(i + 1) + "_" + std::to_string(j),
                                   VarKind::Continuous, 0.0, 1.0));
        blk.z.push_back(zi);
        std::vector<int> di;
        for (int k = 0; k < nbits; ++k)
            di.push_back(m.add_var(prefix + "g_" + std::to_string(i + 1) + "_" + std::to_string(k),
                                   binary_delta ? VarKind::Binary : VarKind::Continuous, 0.0, 1.0));
        blk.delta.push_back(di);

        for (int j = 1; j < n; ++j) {  // lambda_ij >= 0 in z-space is the chain
            LinExpr e = LinExpr::var(blk.z_var(i, j)) - LinExpr::var(blk.z_var(i, j + 1));
            m.add_con(e, Sense::GE, 0.0);
        }

        // lambda_ij = z_ij - z_{ij+1}, with z_i0 = 1 and z_{i,n+1} = 0
        auto lambda = [&](int j) {
            LinExpr e;
            if (j == 0) e.constant = 1.0; else e.add(blk.z_var(i, j), 1.0);
            if (j + 1 <= n) e.add(blk.z_var(i, j + 1), -1.0);
            return e;
        };
        auto eta = [&](int t) -> unsigned {  // eta^(0) := eta^(1), eta^(n+1) := eta^(n)
            if (t < 1) t = 1;
            if (t > n) t = n;
            return detail::gray_code(static_cast<unsigned>(t - 1));
        };
        for (int k = 0; k < nbits; ++k) {
            LinExpr sum_not_L, sum_not_R;
            for (int j = 0; j <= n; ++j) {
                bool in_L = ((eta(j) >> k) & 1u) || ((eta(j + 1) >> k) & 1u);
                bool in_R = !((eta(j) >> k) & 1u) || !((eta(j + 1) >> k) & 1u);
                if (!in_L) sum_not_L += lambda(j);
                if (!in_R) sum_not_R += lambda(j);
            }
            int dk = blk.delta[static_cast<size_t>(i)][static_cast<size_t>(k)];
            m.add_con(sum_not_L - LinExpr::var(dk), Sense::LE, 0.0);
            m.add_con(LinExpr::var(dk) + sum_not_R, Sense::LE, 1.0);
        }
        if (!f_vars.empty()) {
            LinExpr link = blk.f_expr(s, i) - LinExpr::var(f_vars[static_cast<size_t>(i)]);
            m.add_con(link, Sense::EQ, 0.0);
        }
    }
    return blk;
}

// Overestimator-to-underestimator switch: u := a - o + f keeps the same bound
// a and satisfies u <= min(f, a) whenever o >= max(f, a).
inline std::pair<LinExpr, double> switch_transform(const LinExpr& estimator, double bound,
                                                   bool chi, const LinExpr& f_expr) {
    if (chi) return {estimator, bound};
    LinExpr u(bound);
    u -= estimator;
    u += f_expr;
    return {u, bound};
}

}  // namespace relaxtk
