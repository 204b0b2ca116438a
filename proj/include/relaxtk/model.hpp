#pragma once

#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "relaxtk/linear.hpp"

namespace relaxtk {

enum class VarKind { Continuous, Binary };
enum class Sense { LE, EQ, GE };

struct Variable {
    std::string name;
    VarKind kind = VarKind::Continuous;
    double lo = -kInf;
    double hi = kInf;
};

struct Constraint {
    LinExpr row;  // constant folded into rhs by add_con
    Sense sense = Sense::LE;
    double rhs = 0.0;
};

struct ModelIR {
    std::vector<Variable> vars;
    std::vector<Constraint> cons;
    bool maximize = true;
    LinExpr objective;

    int add_var(const std::string& name, VarKind kind, double lo, double hi) {
        if (kind == VarKind::Binary && (lo != 0.0 || hi != 1.0))
            throw Error("binary variable must have bounds [0,1]: " + name);
        if (lo > hi) throw Error("variable lower bound exceeds upper: " + name);
        vars.push_back({name, kind, lo, hi});
        return static_cast<int>(vars.size()) - 1;
    }

    int add_con(LinExpr row, Sense sense, double rhs) {
        rhs -= row.constant;
        row.constant = 0.0;
        row.normalize(1e-14);
        check_row(row);
        if (!std::isfinite(rhs)) throw Error("constraint rhs not finite");
        cons.push_back({std::move(row), sense, rhs});
        return static_cast<int>(cons.size()) - 1;
    }

    void set_objective(LinExpr obj, bool max) {
        obj.normalize(0.0);
        check_row(obj);
        objective = std::move(obj);
        maximize = max;
    }

    size_t num_vars() const { return vars.size(); }

    std::vector<Interval> var_boxes() const {
        std::vector<Interval> b;
        b.reserve(vars.size());
        for (const auto& v : vars) b.emplace_back(v.lo, v.hi);
        return b;
    }

    // feasibility of a full-length point against rows and bounds
    bool feasible(const std::vector<double>& x, double tol) const {
        for (size_t i = 0; i < vars.size(); ++i)
            if (x[i] < vars[i].lo - tol || x[i] > vars[i].hi + tol) return false;
        for (const auto& c : cons) {
            double v = c.row.eval(x);
            if (c.sense == Sense::LE && v > c.rhs + tol) return false;
            if (c.sense == Sense::GE && v < c.rhs - tol) return false;
            if (c.sense == Sense::EQ && std::abs(v - c.rhs) > tol) return false;
        }
        return true;
    }

private:
    void check_row(const LinExpr& row) const {
        for (const auto& [i, c] : row.terms) {
            if (i < 0 || static_cast<size_t>(i) >= vars.size())
                throw Error("constraint references unknown variable index " +
                            std::to_string(i));
            if (!std::isfinite(c)) throw Error("constraint coefficient not finite");
        }
    }
};

enum class SolveStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct SolveResult {
    SolveStatus status = SolveStatus::IterationLimit;
    double value = 0.0;            // incumbent objective (valid when Optimal)
    double bound = 0.0;            // dual bound; equals value on Optimal
    std::vector<double> point;     // primal values, one per model variable
    bool has_point = false;
    long iterations = 0;
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "optimal";
        case SolveStatus::Infeasible: return "infeasible";
        case SolveStatus::Unbounded: return "unbounded";
        case SolveStatus::IterationLimit: return "iteration-limit";
    }
    return "?";
}

namespace detail {
inline std::string lp_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}
}  // namespace detail

// CPLEX-style LP text. The layout is fixed so golden-file tests stay byte
// stable: one constraint per line, named c1..cN, explicit Bounds section.
inline std::string write_lp_string(const ModelIR& m) {
    using detail::lp_num;
    std::string out;
    out += m.maximize ? "Maximize\n" : "Minimize\n";
    out += " obj:";
    if (m.objective.terms.empty()) out += " 0 " + m.vars.at(0).name;
    for (const auto& [i, c] : m.objective.terms) {
        out += (c < 0 ? " - " : " + ") + lp_num(std::abs(c)) + " " + m.vars[i].name;
    }
    if (m.objective.constant != 0.0) {
        double c = m.objective.constant;
        out += (c < 0 ? " - " : " + ") + lp_num(std::abs(c));
    }
    out += "\nSubject To\n";
    for (size_t k = 0; k < m.cons.size(); ++k) {
        const auto& con = m.cons[k];
        out += " c" + std::to_string(k + 1) + ":";
        if (con.row.terms.empty()) out += " 0 " + m.vars.at(0).name;
        bool first = true;
        for (const auto& [i, c] : con.row.terms) {
            if (first && c >= 0) out += " " + lp_num(c) + " " + m.vars[i].name;
            else out += (c < 0 ? " - " : " + ") + lp_num(std::abs(c)) + " " + m.vars[i].name;
            first = false;
        }
        switch (con.sense) {
            case Sense::LE: out += " <= "; break;
            case Sense::EQ: out += " = "; break;
            case Sense::GE: out += " >= "; break;
        }
        out += lp_num(con.rhs) + "\n";
    }
    out += "Bounds\n";
    for (const auto& v : m.vars) {
        if (v.lo == v.hi) {
            out += " " + v.name + " = " + lp_num(v.lo) + "\n";
        } else if (std::isinf(v.lo) && std::isinf(v.hi)) {
            out += " " + v.name + " free\n";
        } else if (std::isinf(v.lo)) {
            out += " -inf <= " + v.name + " <= " + lp_num(v.hi) + "\n";
        } else if (std::isinf(v.hi)) {
            out += " " + v.name + " >= " + lp_num(v.lo) + "\n";
        } else {
            out += " " + lp_num(v.lo) + " <= " + v.name + " <= " + lp_num(v.hi) + "\n";
        }
    }
    bool any_bin = false;
    for (const auto& v : m.vars)
        if (v.kind == VarKind::Binary) {
            if (!any_bin) out += "Binaries\n";
            any_bin = true;
            out += " " + v.name + "\n";
        }
    out += "End\n";
    return out;
}

inline void write_lp_file(const ModelIR& m, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open for writing: " + path);
    f << write_lp_string(m);
    if (!f) throw Error("write failed: " + path);
}

inline nlohmann::json model_to_json(const ModelIR& m) {
    nlohmann::json j;
    j["objective"]["sense"] = m.maximize ? "max" : "min";
    j["objective"]["constant"] = m.objective.constant;
    nlohmann::json oterms = nlohmann::json::array();
    for (const auto& [i, c] : m.objective.terms) oterms.push_back({i, c});
    j["objective"]["terms"] = oterms;
    j["variables"] = nlohmann::json::array();
    for (const auto& v : m.vars)
        j["variables"].push_back({{"name", v.name},
                                  {"kind", v.kind == VarKind::Binary ? "binary" : "continuous"},
                                  {"lo", v.lo},
                                  {"hi", v.hi}});
    j["constraints"] = nlohmann::json::array();
    for (const auto& c : m.cons) {
        nlohmann::json terms = nlohmann::json::array();
        for (const auto& [i, v] : c.row.terms) terms.push_back({i, v});
        const char* s = c.sense == Sense::LE ? "<=" : (c.sense == Sense::EQ ? "=" : ">=");
        j["constraints"].push_back({{"terms", terms}, {"sense", s}, {"rhs", c.rhs}});
    }
    return j;
}

inline ModelIR model_from_json(const nlohmann::json& j) {
    ModelIR m;
    for (const auto& v : j.at("variables")) {
        double lo = v.at("lo").is_null() ? -kInf : v.at("lo").get<double>();
        double hi = v.at("hi").is_null() ? kInf : v.at("hi").get<double>();
        m.add_var(v.at("name").get<std::string>(),
                  v.at("kind").get<std::string>() == "binary" ? VarKind::Binary
                                                              : VarKind::Continuous,
                  lo, hi);
    }
    for (const auto& c : j.at("constraints")) {
        LinExpr row;
        for (const auto& t : c.at("terms")) row.add(t.at(0).get<int>(), t.at(1).get<double>());
        std::string s = c.at("sense").get<std::string>();
        Sense sense = s == "<=" ? Sense::LE : (s == "=" ? Sense::EQ : Sense::GE);
        m.add_con(std::move(row), sense, c.at("rhs").get<double>());
    }
    LinExpr obj;
    obj.constant = j.at("objective").at("constant").get<double>();
    for (const auto& t : j.at("objective").at("terms"))
        obj.add(t.at(0).get<int>(), t.at(1).get<double>());
    m.set_objective(std::move(obj), j.at("objective").at("sense").get<std::string>() == "max");
    return m;
}

}  // namespace relaxtk
