#pragma once

#include <Eigen/Dense>

#include "relaxtk/model.hpp"

namespace relaxtk {

// Exhaustive vertex enumeration for small polytopes: every vertex is the
// unique solution of dim linearly independent active rows, so walk all
// combinations of inequality rows on top of the always-active equalities.
// Intended for ideality fixtures only (dimension <= 14).
class VertexEnumerator {
public:
    struct Options {
        double feas_tol = 1e-9;
        double dedup_tol = 1e-9;
        int max_dim = 14;
        long max_combinations = 20000000;
    };

    explicit VertexEnumerator(Options opt = {}) : opt_(opt) {}

    std::vector<std::vector<double>> enumerate(const ModelIR& m) const {
        const int dim = static_cast<int>(m.vars.size());
        if (dim > opt_.max_dim)
            throw Error("vertex enumeration: dimension " + std::to_string(dim) +
                        " exceeds limit " + std::to_string(opt_.max_dim));

        // Collect rows a.x = b (equalities) and a.x <= b (inequalities; GE
        // rows and bounds are normalized into <= form).
        std::vector<Eigen::VectorXd> eq_a, le_a;
        std::vector<double> eq_b, le_b;
        auto row_vec = [&](const LinExpr& e) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(dim);
            for (const auto& [i, c] : e.terms) v(i) = c;
            return v;
        };
        for (const auto& c : m.cons) {
            Eigen::VectorXd a = row_vec(c.row);
            switch (c.sense) {
                case Sense::EQ: eq_a.push_back(a); eq_b.push_back(c.rhs); break;
                case Sense::LE: le_a.push_back(a); le_b.push_back(c.rhs); break;
                case Sense::GE: le_a.push_back(-a); le_b.push_back(-c.rhs); break;
            }
        }
        for (int j = 0; j < dim; ++j) {
            const auto& v = m.vars[j];
            if (v.lo == v.hi) {
                Eigen::VectorXd a = Eigen::VectorXd::Zero(dim);
                a(j) = 1.0;
                eq_a.push_back(a);
                eq_b.push_back(v.lo);
                continue;
            }
            if (std::isfinite(v.hi)) {
                Eigen::VectorXd a = Eigen::VectorXd::Zero(dim);
                a(j) = 1.0;
                le_a.push_back(a);
                le_b.push_back(v.hi);
            }
            if (std::isfinite(v.lo)) {
                Eigen::VectorXd a = Eigen::VectorXd::Zero(dim);
                a(j) = -1.0;
                le_a.push_back(a);
                le_b.push_back(-v.lo);
            }
        }

        const int neq = static_cast<int>(eq_a.size());
        Eigen::MatrixXd E(neq, dim);
        for (int i = 0; i < neq; ++i) E.row(i) = eq_a[static_cast<size_t>(i)];
        int eq_rank = neq > 0 ? static_cast<int>(Eigen::FullPivLU<Eigen::MatrixXd>(E).rank()) : 0;
        int need = dim - eq_rank;
        if (need < 0) throw Error("vertex enumeration: equality system over-determined");

        const int ni = static_cast<int>(le_a.size());
        if (need > ni) return {};
        long combos = 1;
        for (int k = 0; k < need; ++k) {
            combos = combos * (ni - k) / (k + 1);
            if (combos > opt_.max_combinations)
                throw Error("vertex enumeration: too many row combinations");
        }

        std::vector<std::vector<double>> verts;
        std::vector<int> pick(static_cast<size_t>(need));
        for (int k = 0; k < need; ++k) pick[k] = k;

        Eigen::MatrixXd M(neq + need, dim);
        Eigen::VectorXd rhs(neq + need);
        for (int i = 0; i < neq; ++i) {
            M.row(i) = eq_a[static_cast<size_t>(i)];
            rhs(i) = eq_b[static_cast<size_t>(i)];
        }

        auto visit = [&]() {
            for (int k = 0; k < need; ++k) {
                M.row(neq + k) = le_a[static_cast<size_t>(pick[k])];
                rhs(neq + k) = le_b[static_cast<size_t>(pick[k])];
            }
            Eigen::FullPivLU<Eigen::MatrixXd> lu(M);
            if (static_cast<int>(lu.rank()) != dim) return;
            Eigen::VectorXd x = lu.solve(rhs);
            if ((M * x - rhs).lpNorm<Eigen::Infinity>() > opt_.feas_tol) return;
            for (int i = 0; i < neq; ++i)
                if (std::abs(eq_a[static_cast<size_t>(i)].dot(x) - eq_b[static_cast<size_t>(i)]) >
                    opt_.feas_tol)
                    return;
            for (int i = 0; i < ni; ++i)
                if (le_a[static_cast<size_t>(i)].dot(x) > le_b[static_cast<size_t>(i)] + opt_.feas_tol)
                    return;
            std::vector<double> pt(x.data(), x.data() + dim);
            for (const auto& seen : verts) {
                double diff = 0.0;
                for (int j = 0; j < dim; ++j)
                    diff = std::max(diff, std::abs(seen[static_cast<size_t>(j)] - pt[static_cast<size_t>(j)]));
                if (diff <= opt_.dedup_tol) return;
            }
            verts.push_back(std::move(pt));
        };

        if (need == 0) {
            visit();
            return verts;
        }
        while (true) {
            visit();
            int k = need - 1;
            while (k >= 0 && pick[k] == ni - need + k) --k;
            if (k < 0) break;
            ++pick[k];
            for (int t = k + 1; t < need; ++t) pick[t] = pick[t - 1] + 1;
        }
        return verts;
    }

private:
    Options opt_;
};

inline std::vector<std::vector<double>> enumerate_vertices(const ModelIR& m,
                                                           VertexEnumerator::Options opt = {}) {
    VertexEnumerator e(opt);
    return e.enumerate(m);
}

}  // namespace relaxtk
