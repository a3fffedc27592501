#ifndef PUQ_SUBST_HPP
#define PUQ_SUBST_HPP

#include <utility>
#include <vector>

#include "puq/ast.hpp"
#include "puq/builtins.hpp"

namespace puq {

/// Applies a binding to a pattern: bound variables become literals,
/// offsets are folded (x+k at x=c becomes the literal c+k).
inline Pattern subst_pattern(const Pattern& p, const Binding& b) {
    if (p.kind == Pattern::Kind::Var || p.kind == Pattern::Kind::Succ) {
        auto it = b.find(p.name);
        if (it == b.end()) return p;
        const Constant& c = it->second;
        if (p.kind == Pattern::Kind::Var) {
            if (c.is_integer()) return Pattern::lit_int(c.as_integer());
            if (c.is_boolean()) return Pattern::lit_bool(c.as_boolean());
            throw EvalError(EvalError::Kind::Type,
                            "top marker cannot instantiate pattern variable " + p.name);
        }
        if (!c.is_integer())
            throw EvalError(EvalError::Kind::Type,
                            "offset pattern variable " + p.name + " bound to a non-integer");
        return Pattern::lit_int(c.as_integer() + p.lit);
    }
    return p;
}

inline Segment subst_segment(const Segment& s, const Binding& b) {
    if (!s.pattern_index) return s;
    Pattern folded = subst_pattern(*s.pattern_index, b);
    Segment out;
    out.name = s.name;
    if (folded.kind == Pattern::Kind::LitInt)
        out.const_index = Constant::integer(folded.lit);
    else if (folded.kind == Pattern::Kind::LitBool)
        out.const_index = Constant::boolean(folded.lit_b);
    else
        out.pattern_index = folded;  // variable still free
    return out;
}

/// Builds a builtin call, folding it to its value when every argument is
/// already a constant. Instantiating fib(x+1) at x=1 yields fib(2), not
/// fib(1+1). Calls that would fail (division by zero, kind mismatch) are
/// left unfolded; evaluation reports them.
inline Expr fold_builtin(const std::string& name, std::vector<Expr> args) {
    if (is_builtin(name) && args.size() == builtin_arity(name)) {
        std::vector<Constant> consts;
        consts.reserve(args.size());
        for (const auto& a : args) {
            if (a.kind() != Expr::Kind::Const) break;
            consts.push_back(a.value());
        }
        if (consts.size() == args.size()) {
            try {
                return Expr::constant(apply_builtin(name, consts));
            } catch (const EvalError&) {
            }
        }
    }
    return Expr::call(name, std::move(args));
}

inline Expr subst_expr(const Expr& e, const Binding& b) {
    switch (e.kind()) {
    case Expr::Kind::Const:
        return e;
    case Expr::Kind::Var: {
        auto it = b.find(e.name());
        if (it == b.end()) return e;
        return Expr::constant(it->second);
    }
    case Expr::Kind::Call: {
        std::vector<Expr> args;
        args.reserve(e.args().size());
        for (const auto& a : e.args()) args.push_back(subst_expr(a, b));
        return fold_builtin(e.name(), std::move(args));
    }
    case Expr::Kind::LocatedCall: {
        LocationPath path;
        path.segments.reserve(e.path().segments.size());
        for (const auto& s : e.path().segments) path.segments.push_back(subst_segment(s, b));
        std::vector<Expr> args;
        args.reserve(e.args().size());
        for (const auto& a : e.args()) args.push_back(subst_expr(a, b));
        return Expr::located_call(std::move(path), e.name(), std::move(args));
    }
    }
    return e;
}

/// Instantiates a clause at a binding covering its pattern variables.
inline Clause substitute(const Clause& c, const Binding& b) {
    Clause out;
    out.head = c.head;
    out.params.reserve(c.params.size());
    for (const auto& p : c.params) out.params.push_back(subst_pattern(p, b));
    out.body = subst_expr(c.body, b);
    return out;
}

}  // namespace puq

#endif  // PUQ_SUBST_HPP
