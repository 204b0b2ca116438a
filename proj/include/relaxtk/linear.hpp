#pragma once

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relaxtk {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Closed interval endpoints; empty intervals are not representable on purpose.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {}

    bool contains(double v, double slack = 0.0) const {
        return v >= lo - slack && v <= hi + slack;
    }
    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }

    Interval operator+(const Interval& o) const { return {lo + o.lo, hi + o.hi}; }
    Interval operator*(double c) const {
        return c >= 0 ? Interval{lo * c, hi * c} : Interval{hi * c, lo * c};
    }
    Interval operator*(const Interval& o) const {
        double a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }
};

inline Interval pow_interval(const Interval& x, int p) {
    if (p < 1) throw Error("pow_interval: exponent must be >= 1");
    auto ipow = [](double v, int e) {
        double r = 1.0;
        for (int k = 0; k < e; ++k) r *= v;
        return r;
    };
    if (p % 2 == 1 || x.lo >= 0.0)
        return {ipow(x.lo, p), ipow(x.hi, p)};
    if (x.hi <= 0.0)
        return {ipow(x.hi, p), ipow(x.lo, p)};
    // even power straddling zero
    return {0.0, std::max(ipow(x.lo, p), ipow(x.hi, p))};
}

// Sparse linear expression c0 + sum coef_k * x_{idx_k}. Terms are kept sorted
// by variable index with unique indices once normalize() has run.
struct LinExpr {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;

    LinExpr() = default;
    explicit LinExpr(double c) : constant(c) {}

    static LinExpr var(int idx, double coef = 1.0) {
        LinExpr e;
        e.terms.emplace_back(idx, coef);
        return e;
    }

    void add(int idx, double coef) { terms.emplace_back(idx, coef); }

    void normalize(double drop_tol = 0.0) {
        std::sort(terms.begin(), terms.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<std::pair<int, double>> merged;
        for (const auto& t : terms) {
            if (!merged.empty() && merged.back().first == t.first)
                merged.back().second += t.second;
            else
                merged.push_back(t);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [&](const auto& t) {
                                        return std::abs(t.second) <= drop_tol;
                                    }),
                     merged.end());
        terms = std::move(merged);
    }

    double eval(const std::vector<double>& x) const {
        double v = constant;
        for (const auto& [i, c] : terms) v += c * x[static_cast<size_t>(i)];
        return v;
    }

    LinExpr& operator+=(const LinExpr& o) {
        constant += o.constant;
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        normalize();
        return *this;
    }
    LinExpr& operator-=(const LinExpr& o) {
        constant -= o.constant;
        for (const auto& [i, c] : o.terms) terms.emplace_back(i, -c);
        normalize();
        return *this;
    }
    LinExpr& operator*=(double c) {
        constant *= c;
        for (auto& t : terms) t.second *= c;
        return *this;
    }
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { a += b; return a; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { a -= b; return a; }
    friend LinExpr operator*(LinExpr a, double c) { a *= c; return a; }
    friend LinExpr operator*(double c, LinExpr a) { a *= c; return a; }

    bool same_coefficients(const LinExpr& o, double tol) const {
        LinExpr d = *this - o;
        for (const auto& [i, c] : d.terms) {
            (void)i;
            if (std::abs(c) > tol) return false;
        }
        return true;
    }
};

// Termwise interval enclosure of a linear expression given variable boxes.
inline Interval expr_interval(const LinExpr& e, const std::vector<Interval>& box) {
    Interval r{e.constant, e.constant};
    for (const auto& [i, c] : e.terms) {
        const Interval& b = box[static_cast<size_t>(i)];
        if (!std::isfinite(b.lo) || !std::isfinite(b.hi))
            throw Error("expr_interval: unbounded variable " + std::to_string(i));
        r = r + b * c;
    }
    return r;
}

}  // namespace relaxtk
