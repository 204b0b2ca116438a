#pragma once

#include <queue>

#include "relaxtk/simplex.hpp"

namespace relaxtk {

// Best-bound branch and bound over the binary variables of a ModelIR.
// Branching picks the most fractional binary; integrality tolerance 1e-6.
class BranchBound {
public:
    struct Options {
        double int_tol = 1e-6;
        double gap_tol = 1e-9;
        long node_limit = 100000;
        SimplexSolver::Options lp;
    };

    explicit BranchBound(Options opt = {}) : opt_(opt) {}

    SolveResult solve(const ModelIR& model) {
        std::vector<int> binaries;
        for (size_t j = 0; j < model.vars.size(); ++j)
            if (model.vars[j].kind == VarKind::Binary) binaries.push_back(static_cast<int>(j));

        // Internally treat as maximization; flip at the end for min models.
        double sgn = model.maximize ? 1.0 : -1.0;

        struct Node {
            double parent_bound;
            std::vector<std::pair<int, Interval>> fixings;
        };
        auto cmp = [](const Node& a, const Node& b) { return a.parent_bound < b.parent_bound; };
        std::priority_queue<Node, std::vector<Node>, decltype(cmp)> open(cmp);
        open.push({kInf, {}});

        SolveResult best;
        best.status = SolveStatus::Infeasible;
        double incumbent = -kInf;
        double global_bound = kInf;
        long nodes = 0;
        bool hit_limit = false;
        bool any_lp_trouble = false;

        while (!open.empty()) {
            if (nodes >= opt_.node_limit) { hit_limit = true; break; }
            Node node = open.top();
            open.pop();
            if (node.parent_bound <= incumbent + opt_.gap_tol && std::isfinite(node.parent_bound))
                continue;  // cannot improve
            ++nodes;

            SolveResult lp = simplex_solve(model, node.fixings, opt_.lp);
            if (lp.status == SolveStatus::Infeasible) continue;
            if (lp.status == SolveStatus::Unbounded) {
                best.status = SolveStatus::Unbounded;
                return best;
            }
            if (lp.status == SolveStatus::IterationLimit) { any_lp_trouble = true; continue; }
            double lp_val = sgn * lp.value;
            if (lp_val <= incumbent + opt_.gap_tol) continue;

            int frac_var = -1;
            double frac_score = opt_.int_tol;
            for (int j : binaries) {
                double v = lp.point[static_cast<size_t>(j)];
                double f = std::min(v, 1.0 - v);
                if (f > frac_score) { frac_score = f; frac_var = j; }
            }
            if (frac_var < 0) {
                // integral: new incumbent
                incumbent = lp_val;
                best.status = SolveStatus::Optimal;
                best.point = lp.point;
                best.has_point = true;
                best.value = sgn * incumbent;
                continue;
            }
            auto down = node.fixings;
            down.emplace_back(frac_var, Interval{0.0, 0.0});
            auto up = node.fixings;
            up.emplace_back(frac_var, Interval{1.0, 1.0});
            open.push({lp_val, std::move(down)});
            open.push({lp_val, std::move(up)});
        }

        // Dual bound: the best open node (or the incumbent when the tree is done).
        global_bound = incumbent;
        if (hit_limit && !open.empty())
            global_bound = std::max(global_bound, open.top().parent_bound);
        if (any_lp_trouble) global_bound = kInf;  // a skipped node invalidates the bound
        best.iterations = nodes;
        if (best.status == SolveStatus::Optimal) {
            best.bound = sgn * (hit_limit || any_lp_trouble ? global_bound : incumbent);
            if (hit_limit) best.status = SolveStatus::IterationLimit;
        } else if (hit_limit || any_lp_trouble) {
            best.status = SolveStatus::IterationLimit;
            best.bound = sgn * global_bound;
        }
        return best;
    }

private:
    Options opt_;
};

inline SolveResult branch_and_bound(const ModelIR& model, BranchBound::Options opt = {}) {
    BranchBound bb(opt);
    return bb.solve(model);
}

}  // namespace relaxtk
