#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "relaxtk/linear.hpp"

namespace relaxtk {

enum class ExprKind { Variable, Constant, Sum, Product, Power };

struct ExprNode;
using ExprPtr = std::shared_ptr<ExprNode>;

struct VariableBox {
    std::vector<double> lower;
    std::vector<double> upper;

    size_t size() const { return lower.size(); }
    void validate() const {
        if (lower.size() != upper.size()) throw Error("VariableBox: size mismatch");
        for (size_t i = 0; i < lower.size(); ++i) {
            if (!std::isfinite(lower[i]) || !std::isfinite(upper[i]))
                throw Error("VariableBox: bounds must be finite");
            if (lower[i] > upper[i])
                throw Error("VariableBox: lower > upper at index " + std::to_string(i));
        }
    }
    Interval at(int i) const {
        return {lower[static_cast<size_t>(i)], upper[static_cast<size_t>(i)]};
    }
};

struct ExprNode {
    ExprKind kind;
    int var_index = -1;                 // Variable
    double value = 0.0;                 // Constant
    std::vector<ExprPtr> children;      // Sum: k children; Product: 2; Power: 1
    std::vector<double> coefficients;   // Sum only, parallel to children
    int exponent = 0;                   // Power, >= 2 after normalization
    Interval bounds{-kInf, kInf};       // filled by propagate_bounds

    static ExprPtr variable(int idx) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Variable;
        n->var_index = idx;
        return n;
    }
    static ExprPtr constant(double v) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Constant;
        n->value = v;
        return n;
    }
    static ExprPtr sum(std::vector<ExprPtr> ch, std::vector<double> co) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Sum;
        n->children = std::move(ch);
        n->coefficients = std::move(co);
        return n;
    }
    static ExprPtr product(ExprPtr a, ExprPtr b) {
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Product;
        n->children = {std::move(a), std::move(b)};
        return n;
    }
    static ExprPtr power(ExprPtr child, int p) {
        if (p < 1) throw Error("power: exponent must be >= 1");
        if (p == 1) return child;
        auto n = std::make_shared<ExprNode>();
        n->kind = ExprKind::Power;
        n->children = {std::move(child)};
        n->exponent = p;
        return n;
    }
};

inline double evaluate(const ExprNode& node, const std::vector<double>& point) {
    switch (node.kind) {
        case ExprKind::Variable:
            if (node.var_index < 0 || static_cast<size_t>(node.var_index) >= point.size())
                throw Error("evaluate: point dimension mismatch");
            return point[static_cast<size_t>(node.var_index)];
        case ExprKind::Constant:
            return node.value;
        case ExprKind::Sum: {
            double v = 0.0;
            for (size_t k = 0; k < node.children.size(); ++k)
                v += node.coefficients[k] * evaluate(*node.children[k], point);
            return v;
        }
        case ExprKind::Product:
            return evaluate(*node.children[0], point) * evaluate(*node.children[1], point);
        case ExprKind::Power: {
            double b = evaluate(*node.children[0], point), r = 1.0;
            for (int k = 0; k < node.exponent; ++k) r *= b;
            return r;
        }
    }
    throw Error("evaluate: bad node kind");
}

inline Interval propagate_bounds(ExprNode& node, const VariableBox& box) {
    switch (node.kind) {
        case ExprKind::Variable:
            node.bounds = box.at(node.var_index);
            break;
        case ExprKind::Constant:
            node.bounds = {node.value, node.value};
            break;
        case ExprKind::Sum: {
            Interval acc{0.0, 0.0};
            for (size_t k = 0; k < node.children.size(); ++k)
                acc = acc + propagate_bounds(*node.children[k], box) * node.coefficients[k];
            node.bounds = acc;
            break;
        }
        case ExprKind::Product:
            node.bounds = propagate_bounds(*node.children[0], box) *
                          propagate_bounds(*node.children[1], box);
            break;
        case ExprKind::Power:
            node.bounds = pow_interval(propagate_bounds(*node.children[0], box),
                                       node.exponent);
            break;
    }
    return node.bounds;
}

namespace detail {

// Recursive-descent parser for sums of terms, each term a product of factors
// with an optional numeric coefficient: "3*x1 + 2*x2", "x1^2*x2^2*x3^2".
class ExprParser {
public:
    ExprParser(std::string_view text, const std::vector<std::string>& names)
        : text_(text), names_(names) {}

    ExprPtr parse() {
        auto e = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing input");
        return e;
    }

private:
    struct Term {
        double coef;
        ExprPtr node;  // null for a pure constant term
    };

    ExprPtr parse_sum() {
        std::vector<Term> terms;
        double sign = 1.0;
        skip_ws();
        if (peek() == '+' || peek() == '-') sign = (get() == '-') ? -1.0 : 1.0;
        terms.push_back(parse_term(sign));
        while (true) {
            skip_ws();
            char c = peek();
            if (c != '+' && c != '-') break;
            get();
            terms.push_back(parse_term(c == '-' ? -1.0 : 1.0));
        }
        return assemble(terms);
    }

    Term parse_term(double sign) {
        double coef = sign;
        std::vector<ExprPtr> factors;
        bool expect_factor = true;
        while (expect_factor) {
            skip_ws();
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
                coef *= parse_number();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                factors.push_back(parse_var_power());
            } else {
                fail("expected a number or variable");
            }
            skip_ws();
            if (peek() == '*') {
                get();
            } else {
                expect_factor = false;
            }
        }
        if (factors.empty()) return {coef, nullptr};
        ExprPtr node = factors[0];
        for (size_t k = 1; k < factors.size(); ++k)
            node = ExprNode::product(node, factors[k]);  // left-deep
        return {coef, node};
    }

    ExprPtr parse_var_power() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string name(text_.substr(start, pos_ - start));
        int idx = -1;
        for (size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == name) { idx = static_cast<int>(i); break; }
        if (idx < 0) fail("unknown variable name '" + name + "'", start);
        ExprPtr base = ExprNode::variable(idx);
        skip_ws();
        if (peek() == '^') {
            get();
            skip_ws();
            size_t estart = pos_;
            double e = parse_number();
            int p = static_cast<int>(e);
            if (p != e || p < 1) fail("exponent must be an integer >= 1", estart);
            base = ExprNode::power(base, p);
        }
        return base;
    }

    double parse_number() {
        size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.' ||
                text_[pos_] == 'e' || text_[pos_] == 'E' ||
                ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
                 (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
            ++pos_;
        std::string tok(text_.substr(start, pos_ - start));
        char* end = nullptr;
        double v = std::strtod(tok.c_str(), &end);
        if (end == tok.c_str() || *end != '\0') fail("bad number '" + tok + "'", start);
        return v;
    }

    ExprPtr assemble(std::vector<Term>& terms) {
        double const_acc = 0.0;
        std::vector<ExprPtr> children;
        std::vector<double> coefs;
        for (auto& t : terms) {
            if (!t.node)
                const_acc += t.coef;
            else {
                children.push_back(t.node);
                coefs.push_back(t.coef);
            }
        }
        if (children.empty()) return ExprNode::constant(const_acc);
        if (const_acc != 0.0) {
            children.push_back(ExprNode::constant(1.0));
            coefs.push_back(const_acc);
        }
        if (children.size() == 1 && coefs[0] == 1.0) return children[0];
        return ExprNode::sum(std::move(children), std::move(coefs));
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    char get() { return text_[pos_++]; }
    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const { fail(msg, pos_); }
    [[noreturn]] void fail(const std::string& msg, size_t at) const {
        size_t line = 1, col = 1;
        for (size_t k = 0; k < at && k < text_.size(); ++k) {
            if (text_[k] == '\n') { ++line; col = 1; } else ++col;
        }
        std::ostringstream os;
        os << "parse error at line " << line << ", column " << col << ": " << msg;
        throw Error(os.str());
    }

    std::string_view text_;
    const std::vector<std::string>& names_;
    size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expression(std::string_view text,
                                const std::vector<std::string>& var_names) {
    return detail::ExprParser(text, var_names).parse();
}

inline std::string to_string(const ExprNode& node,
                             const std::vector<std::string>& var_names) {
    auto fmt = [](double v) {
        std::ostringstream os;
        os.precision(15);
        os << v;
        return os.str();
    };
    switch (node.kind) {
        case ExprKind::Variable:
            return var_names[static_cast<size_t>(node.var_index)];
        case ExprKind::Constant:
            return fmt(node.value);
        case ExprKind::Sum: {
            std::string out;
            for (size_t k = 0; k < node.children.size(); ++k) {
                double c = node.coefficients[k];
                if (k > 0) out += c < 0 ? " - " : " + ";
                else if (c < 0) out += "-";
                double ac = std::abs(c);
                if (ac != 1.0) out += fmt(ac) + "*";
                out += to_string(*node.children[k], var_names);
            }
            return out;
        }
        case ExprKind::Product:
            return to_string(*node.children[0], var_names) + "*" +
                   to_string(*node.children[1], var_names);
        case ExprKind::Power:
            return to_string(*node.children[0], var_names) + "^" +
                   std::to_string(node.exponent);
    }
    throw Error("to_string: bad node kind");
}

inline bool structurally_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Variable: return a.var_index == b.var_index;
        case ExprKind::Constant: return a.value == b.value;
        case ExprKind::Power:
            return a.exponent == b.exponent &&
                   structurally_equal(*a.children[0], *b.children[0]);
        case ExprKind::Product:
            return structurally_equal(*a.children[0], *b.children[0]) &&
                   structurally_equal(*a.children[1], *b.children[1]);
        case ExprKind::Sum: {
            if (a.children.size() != b.children.size()) return false;
            for (size_t k = 0; k < a.children.size(); ++k) {
                if (a.coefficients[k] != b.coefficients[k]) return false;
                if (!structurally_equal(*a.children[k], *b.children[k])) return false;
            }
            return true;
        }
    }
    return false;
}

}  // namespace relaxtk
