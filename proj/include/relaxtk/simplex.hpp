#pragma once

#include <Eigen/Dense>

#include "relaxtk/model.hpp"

namespace relaxtk {

// Dense bounded-variable primal simplex, two phases with artificial columns.
// Dantzig pricing switches to Bland's rule after 5000 iterations to break
// cycles. The basis inverse is kept explicitly and refreshed periodically.
class SimplexSolver {
public:
    struct Options {
        double feas_tol = 1e-7;
        double dual_tol = 1e-9;
        double pivot_tol = 1e-9;
        long bland_after = 5000;
        long max_iterations = 200000;
        int refactor_every = 64;
    };

    explicit SimplexSolver(Options opt = {}) : opt_(opt) {}

    SolveResult solve(const ModelIR& model,
                      const std::vector<std::pair<int, Interval>>& bound_overrides = {}) {
        load(model, bound_overrides);
        if (nrows_ == 0) return solve_box_only(model);

        SolveResult res;
        res.has_point = false;

        if (!phase1()) {
            res.status = iterations_ >= opt_.max_iterations ? SolveStatus::IterationLimit
                                                            : SolveStatus::Infeasible;
            res.iterations = iterations_;
            return res;
        }
        SolveStatus st = phase2();
        res.status = st;
        res.iterations = iterations_;
        if (st == SolveStatus::Optimal || st == SolveStatus::IterationLimit) {
            res.point.assign(xv_.begin(), xv_.begin() + nstruct_);
            res.has_point = true;
            double v = model.objective.eval(res.point);
            res.value = v;
            res.bound = v;
        }
        return res;
    }

private:
    enum class ColStatus { Basic, AtLower, AtUpper, FreeAtZero };

    Options opt_;
    int nstruct_ = 0, nrows_ = 0, ncols_ = 0;
    Eigen::MatrixXd A_;      // nrows x ncols, structurals then slacks then artificials
    Eigen::VectorXd b_;
    std::vector<double> lb_, ub_, xv_;
    std::vector<ColStatus> stat_;
    std::vector<int> basis_;
    Eigen::MatrixXd Binv_;
    Eigen::VectorXd cost_;
    long iterations_ = 0;
    int pivots_since_refactor_ = 0;
    bool max_sense_ = true;
    double obj_shift_ = 0.0;

    void load(const ModelIR& m, const std::vector<std::pair<int, Interval>>& ovr) {
        nstruct_ = static_cast<int>(m.vars.size());
        nrows_ = static_cast<int>(m.cons.size());
        ncols_ = nstruct_ + nrows_;
        A_ = Eigen::MatrixXd::Zero(nrows_, ncols_);
        b_ = Eigen::VectorXd::Zero(nrows_);
        lb_.assign(static_cast<size_t>(ncols_), 0.0);
        ub_.assign(static_cast<size_t>(ncols_), 0.0);
        for (int j = 0; j < nstruct_; ++j) {
            lb_[j] = m.vars[j].lo;
            ub_[j] = m.vars[j].hi;
        }
        for (const auto& [idx, box] : ovr) {
            lb_[idx] = std::max(lb_[idx], box.lo);
            ub_[idx] = std::min(ub_[idx], box.hi);
        }
        for (int r = 0; r < nrows_; ++r) {
            const auto& con = m.cons[r];
            for (const auto& [i, c] : con.row.terms) A_(r, i) = c;
            b_(r) = con.rhs;
            int s = nstruct_ + r;
            A_(r, s) = 1.0;
            switch (con.sense) {
                case Sense::LE: lb_[s] = 0.0; ub_[s] = kInf; break;
                case Sense::GE: lb_[s] = -kInf; ub_[s] = 0.0; break;
                case Sense::EQ: lb_[s] = 0.0; ub_[s] = 0.0; break;
            }
        }
        max_sense_ = m.maximize;
        obj_shift_ = m.objective.constant;
        cost_ = Eigen::VectorXd::Zero(ncols_);
        for (const auto& [i, c] : m.objective.terms)
            cost_(i) = max_sense_ ? c : -c;

        xv_.assign(static_cast<size_t>(ncols_), 0.0);
        stat_.assign(static_cast<size_t>(ncols_), ColStatus::AtLower);
        for (int j = 0; j < nstruct_; ++j) set_initial_status(j);
        basis_.resize(static_cast<size_t>(nrows_));
        for (int r = 0; r < nrows_; ++r) {
            basis_[r] = nstruct_ + r;
            stat_[nstruct_ + r] = ColStatus::Basic;
        }
        Binv_ = Eigen::MatrixXd::Identity(nrows_, nrows_);
        recompute_basics();
        iterations_ = 0;
        pivots_since_refactor_ = 0;
    }

    void set_initial_status(int j) {
        bool lf = std::isfinite(lb_[j]), uf = std::isfinite(ub_[j]);
        if (lf && uf) {
            if (std::abs(lb_[j]) <= std::abs(ub_[j])) { stat_[j] = ColStatus::AtLower; xv_[j] = lb_[j]; }
            else { stat_[j] = ColStatus::AtUpper; xv_[j] = ub_[j]; }
        } else if (lf) { stat_[j] = ColStatus::AtLower; xv_[j] = lb_[j]; }
        else if (uf)   { stat_[j] = ColStatus::AtUpper; xv_[j] = ub_[j]; }
        else           { stat_[j] = ColStatus::FreeAtZero; xv_[j] = 0.0; }
    }

    // LP with no rows: each variable sits at whichever bound the cost prefers.
    SolveResult solve_box_only(const ModelIR& m) {
        SolveResult res;
        std::vector<double> x(static_cast<size_t>(nstruct_));
        for (int j = 0; j < nstruct_; ++j) {
            double c = cost_(j);
            if (c > 0) {
                if (!std::isfinite(ub_[j])) { res.status = SolveStatus::Unbounded; return res; }
                x[j] = ub_[j];
            } else if (c < 0) {
                if (!std::isfinite(lb_[j])) { res.status = SolveStatus::Unbounded; return res; }
                x[j] = lb_[j];
            } else {
                x[j] = std::isfinite(lb_[j]) ? lb_[j] : (std::isfinite(ub_[j]) ? ub_[j] : 0.0);
            }
            if (lb_[j] > ub_[j] + opt_.feas_tol) { res.status = SolveStatus::Infeasible; return res; }
        }
        res.status = SolveStatus::Optimal;
        res.point = x;
        res.has_point = true;
        res.value = res.bound = m.objective.eval(x);
        return res;
    }

    void recompute_basics() {
        Eigen::VectorXd r = b_;
        for (int j = 0; j < ncols_; ++j)
            if (stat_[j] != ColStatus::Basic && xv_[j] != 0.0) r -= A_.col(j) * xv_[j];
        Eigen::VectorXd xb = Binv_ * r;
        for (int i = 0; i < nrows_; ++i) xv_[basis_[i]] = xb(i);
    }

    void refactor() {
        Eigen::MatrixXd B(nrows_, nrows_);
        for (int i = 0; i < nrows_; ++i) B.col(i) = A_.col(basis_[i]);
        Eigen::FullPivLU<Eigen::MatrixXd> lu(B);
        if (!lu.isInvertible()) throw Error("simplex: singular basis");
        Binv_ = lu.inverse();
        pivots_since_refactor_ = 0;
        recompute_basics();
    }

    bool phase1() {
        // Clamp infeasible basic slacks to their nearest bound and cover the
        // residual with an artificial column so the start point is feasible.
        std::vector<int> artificial_rows;
        for (int r = 0; r < nrows_; ++r) {
            int s = basis_[r];
            double v = xv_[s];
            if (v < lb_[s] - opt_.feas_tol || v > ub_[s] + opt_.feas_tol)
                artificial_rows.push_back(r);
        }
        if (artificial_rows.empty()) return true;

        int base = ncols_;
        A_.conservativeResize(nrows_, ncols_ + static_cast<int>(artificial_rows.size()));
        for (size_t k = 0; k < artificial_rows.size(); ++k)
            A_.col(base + static_cast<int>(k)).setZero();
        Eigen::VectorXd p1cost = Eigen::VectorXd::Zero(ncols_ + static_cast<int>(artificial_rows.size()));
        for (size_t k = 0; k < artificial_rows.size(); ++k) {
            int r = artificial_rows[k];
            int s = basis_[r];
            double v = xv_[s];
            double target = v < lb_[s] ? lb_[s] : ub_[s];
            xv_[s] = target;
            stat_[s] = (target == lb_[s]) ? ColStatus::AtLower : ColStatus::AtUpper;
            int a = base + static_cast<int>(k);
            double residual = v - target;  // value the artificial must absorb
            double sigma = residual >= 0 ? 1.0 : -1.0;
            A_(r, a) = sigma;
            lb_.push_back(0.0);
            ub_.push_back(kInf);
            xv_.push_back(std::abs(residual));
            stat_.push_back(ColStatus::Basic);
            basis_[r] = a;
            p1cost(a) = -1.0;  // maximize -(sum of artificials)
        }
        ncols_ = static_cast<int>(A_.cols());
        refactor();

        SolveStatus st = iterate(p1cost);
        if (st == SolveStatus::IterationLimit) return false;
        double infeas = 0.0;
        for (int a = base; a < ncols_; ++a) infeas += xv_[a];
        if (infeas > opt_.feas_tol) return false;
        for (int a = base; a < ncols_; ++a) { lb_[a] = ub_[a] = 0.0; xv_[a] = 0.0; }
        return true;
    }

    SolveStatus phase2() {
        Eigen::VectorXd c = Eigen::VectorXd::Zero(ncols_);
        c.head(cost_.size()) = cost_;
        return iterate(c);
    }

    SolveStatus iterate(const Eigen::VectorXd& c) {
        while (iterations_ < opt_.max_iterations) {
            ++iterations_;
            if (pivots_since_refactor_ >= opt_.refactor_every) refactor();

            Eigen::VectorXd cB(nrows_);
            for (int i = 0; i < nrows_; ++i) cB(i) = c(basis_[i]);
            Eigen::VectorXd y = Binv_.transpose() * cB;
            Eigen::VectorXd d = c - A_.transpose() * y;

            bool bland = iterations_ > opt_.bland_after;
            int enter = -1;
            double enter_dir = 0.0, best_score = opt_.dual_tol;
            for (int j = 0; j < ncols_; ++j) {
                if (stat_[j] == ColStatus::Basic) continue;
                if (lb_[j] == ub_[j]) continue;  // fixed, cannot move
                double dj = d(j);
                double dir = 0.0;
                if ((stat_[j] == ColStatus::AtLower || stat_[j] == ColStatus::FreeAtZero) &&
                    dj > opt_.dual_tol)
                    dir = 1.0;
                else if ((stat_[j] == ColStatus::AtUpper || stat_[j] == ColStatus::FreeAtZero) &&
                         dj < -opt_.dual_tol)
                    dir = -1.0;
                if (dir == 0.0) continue;
                if (bland) { enter = j; enter_dir = dir; break; }
                if (std::abs(dj) > best_score) {
                    best_score = std::abs(dj);
                    enter = j;
                    enter_dir = dir;
                }
            }
            if (enter < 0) return SolveStatus::Optimal;

            Eigen::VectorXd abar = Binv_ * A_.col(enter);

            double t_best = kInf;
            int leave = -1;
            double leave_pivot = 0.0;
            if (std::isfinite(lb_[enter]) && std::isfinite(ub_[enter]))
                t_best = ub_[enter] - lb_[enter];  // bound flip distance
            for (int i = 0; i < nrows_; ++i) {
                double g = enter_dir * abar(i);
                if (std::abs(g) <= opt_.pivot_tol) continue;
                int bj = basis_[i];
                double lim;
                if (g > 0) {
                    if (!std::isfinite(lb_[bj])) continue;
                    lim = (xv_[bj] - lb_[bj]) / g;
                } else {
                    if (!std::isfinite(ub_[bj])) continue;
                    lim = (xv_[bj] - ub_[bj]) / g;
                }
                if (lim < 0) lim = 0;
                bool take = lim < t_best - 1e-12;
                if (!take && lim < t_best + 1e-12) {
                    // tie-break: Bland needs the smallest variable index for its
                    // anti-cycling guarantee; otherwise prefer the larger pivot
                    take = bland ? (leave < 0 || bj < basis_[leave])
                                 : std::abs(abar(i)) > std::abs(leave_pivot);
                }
                if (take) {
                    t_best = lim;
                    leave = i;
                    leave_pivot = abar(i);
                }
            }
            if (!std::isfinite(t_best)) return SolveStatus::Unbounded;

            xv_[enter] += enter_dir * t_best;
            for (int i = 0; i < nrows_; ++i) xv_[basis_[i]] -= enter_dir * t_best * abar(i);

            if (leave < 0) {
                // entering variable traveled to its opposite bound
                stat_[enter] = (stat_[enter] == ColStatus::AtLower) ? ColStatus::AtUpper
                                                                    : ColStatus::AtLower;
                xv_[enter] = (stat_[enter] == ColStatus::AtLower) ? lb_[enter] : ub_[enter];
                continue;
            }
            int out = basis_[leave];
            double g = enter_dir * abar(leave);
            if (g > 0) { stat_[out] = ColStatus::AtLower; xv_[out] = lb_[out]; }
            else       { stat_[out] = ColStatus::AtUpper; xv_[out] = ub_[out]; }
            basis_[leave] = enter;
            stat_[enter] = ColStatus::Basic;

            // product-form update of the explicit inverse
            double piv = abar(leave);
            Binv_.row(leave) /= piv;
            for (int i = 0; i < nrows_; ++i) {
                if (i == leave) continue;
                double f = abar(i);
                if (f != 0.0) Binv_.row(i) -= f * Binv_.row(leave);
            }
            ++pivots_since_refactor_;
        }
        return SolveStatus::IterationLimit;
    }
};

inline SolveResult simplex_solve(const ModelIR& model,
                                 const std::vector<std::pair<int, Interval>>& bound_overrides = {},
                                 SimplexSolver::Options opt = {}) {
    SimplexSolver s(opt);
    return s.solve(model, bound_overrides);
}

}  // namespace relaxtk
