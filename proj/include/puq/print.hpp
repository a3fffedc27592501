#ifndef PUQ_PRINT_HPP
#define PUQ_PRINT_HPP

#include <sstream>
#include <string>

#include "puq/ast.hpp"

namespace puq {

inline std::string print_constant(const Constant& c) {
    switch (c.kind()) {
    case Constant::Kind::Integer: return c.as_integer().str();
    case Constant::Kind::Boolean: return c.as_boolean() ? "true" : "false";
    case Constant::Kind::Top: return "top";
    }
    return "?";
}

inline std::string print_pattern(const Pattern& p) {
    switch (p.kind) {
    case Pattern::Kind::LitInt: return p.lit.str();
    case Pattern::Kind::LitBool: return p.lit_b ? "true" : "false";
    case Pattern::Kind::Var: return p.name;
    case Pattern::Kind::Succ: return p.name + "+" + p.lit.str();
    }
    return "?";
}

inline std::string print_path(const LocationPath& path) {
    std::string out;
    for (const auto& seg : path.segments) {
        out += "/" + seg.name;
        if (seg.const_index)
            out += "[" + print_constant(*seg.const_index) + "]";
        else if (seg.pattern_index)
            out += "[" + print_pattern(*seg.pattern_index) + "]";
    }
    return out;
}

namespace detail {

// Infix rendering for the sugared builtins. Precedence levels:
// comparisons (1, non-associative) < add/sub (2, left) < mul (3, left) < atoms.
inline const char* infix_op(const std::string& name) {
    if (name == "add") return "+";
    if (name == "sub") return "-";
    if (name == "mul") return "*";
    if (name == "eq") return "=";
    if (name == "lt") return "<";
    if (name == "leq") return "<=";
    return nullptr;
}

inline int infix_prec(const std::string& name) {
    if (name == "eq" || name == "lt" || name == "leq") return 1;
    if (name == "add" || name == "sub") return 2;
    return 3;  // mul
}

inline void print_expr_rec(const Expr& e, int min_prec, std::string& out);

inline void print_args(const std::vector<Expr>& args, std::string& out) {
    out += "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        print_expr_rec(args[i], 0, out);
    }
    out += ")";
}

inline void print_expr_rec(const Expr& e, int min_prec, std::string& out) {
    switch (e.kind()) {
    case Expr::Kind::Const:
        out += print_constant(e.value());
        return;
    case Expr::Kind::Var:
        out += e.name();
        return;
    case Expr::Kind::Call: {
        const char* op = infix_op(e.name());
        if (op && e.args().size() == 2) {
            int prec = infix_prec(e.name());
            bool paren = prec < min_prec;
            // additions of two atoms print tight: fib(x+1), not fib(x + 1)
            auto atom = [](const Expr& a) {
                return a.kind() == Expr::Kind::Var || a.kind() == Expr::Kind::Const;
            };
            bool tight = e.name() == "add" && atom(e.args()[0]) && atom(e.args()[1]);
            if (paren) out += "(";
            print_expr_rec(e.args()[0], prec, out);
            if (!tight) out += " ";
            out += op;
            if (!tight) out += " ";
            print_expr_rec(e.args()[1], prec + 1, out);
            if (paren) out += ")";
            return;
        }
        out += e.name();
        print_args(e.args(), out);
        return;
    }
    case Expr::Kind::LocatedCall:
        out += print_path(e.path());
        out += ".";
        out += e.name();
        print_args(e.args(), out);
        return;
    }
}

}  // namespace detail

inline std::string print_expr(const Expr& e) {
    std::string out;
    detail::print_expr_rec(e, 0, out);
    return out;
}

inline std::string quantifier_prefix(const Definition& d) {
    if (d.quant == Quantifier::Ground || d.vars.empty()) return "";
    std::string out = d.quant == Quantifier::BQ ? "forall " : "pforall ";
    for (std::size_t i = 0; i < d.vars.size(); ++i) {
        if (i) out += ", ";
        out += d.vars[i];
    }
    out += ". ";
    return out;
}

inline std::string print_clause(const Clause& c) {
    std::string out = "def " + c.head + "(";
    for (std::size_t i = 0; i < c.params.size(); ++i) {
        if (i) out += ", ";
        out += print_pattern(c.params[i]);
    }
    out += ") = " + print_expr(c.body) + ";";
    return out;
}

inline std::string print_definition(const Definition& d) {
    return quantifier_prefix(d) + print_clause(d.clause);
}

/// One definition per line, in program order; re-parses to an equal program.
inline std::string pretty_print(const Program& p) {
    std::string out;
    for (const auto& d : p.defs) {
        out += print_definition(d);
        out += "\n";
    }
    return out;
}

/// Renders a ground call like fib(3) for diagnostics and trace lines.
inline std::string print_call(const std::string& head, const std::vector<Constant>& args) {
    std::string out = head + "(";
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) out += ", ";
        out += print_constant(args[i]);
    }
    out += ")";
    return out;
}

}  // namespace puq

#endif  // PUQ_PRINT_HPP
