#ifndef PUQ_EVAL_HPP
#define PUQ_EVAL_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puq/ast.hpp"
#include "puq/builtins.hpp"
#include "puq/errors.hpp"
#include "puq/locations.hpp"
#include "puq/print.hpp"

namespace puq {

struct Counters {
    std::uint64_t steps = 0;
    std::uint64_t body_evals_bq = 0;
    std::uint64_t body_evals_puq = 0;
    std::uint64_t body_evals_ground = 0;
    std::uint64_t memo_adds = 0;
    std::uint64_t memo_hits = 0;
    std::uint64_t path_resolutions = 0;
    std::uint64_t class_entry_scans = 0;
    std::uint64_t instantiations = 0;

    std::uint64_t clause_evals() const { return body_evals_bq + body_evals_puq + body_evals_ground; }
};

/// Safety valve; exceeding either limit aborts with budget-exceeded,
/// never a wrong answer.
struct Budget {
    std::optional<std::uint64_t> max_steps;
    std::optional<std::uint64_t> max_depth;

    static Budget unlimited() { return {}; }
    static Budget limits(std::uint64_t steps, std::uint64_t depth) { return {steps, depth}; }
};

struct TraceEvent {
    enum class Kind { EvalEnter, BackchainMatch, MemoAdd, MemoHit, BuiltinApply };
    Kind kind;
    std::string line;  // machine-parseable name=value fields
};

using TraceSink = std::function<void(const TraceEvent&)>;

struct EvalOutcome {
    Constant value;
    Program evolved;
    ObjectStore store;
    Counters stats;
};

namespace detail {

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

inline const char* quant_name(Quantifier q) {
    switch (q) {
    case Quantifier::Ground: return "ground";
    case Quantifier::BQ: return "bq";
    case Quantifier::PUQ: return "puq";
    }
    return "?";
}

}  // namespace detail

/// The interpreter. Execution alternates between an evaluation phase over
/// expressions and a backchaining phase that resolves a ground call against
/// the definitions in scope, first match wins. PUQ clause instances prepend
/// their computed value to the scope as a permanent ground entry; BQ
/// instances are discarded after use.
class Machine {
public:
    Machine(Program program, ObjectStore store, Budget budget = Budget::unlimited(),
            TraceSink sink = {})
        : program_(std::move(program)),
          store_(std::move(store)),
          budget_(budget),
          sink_(std::move(sink)) {}

    /// Evaluates a closed expression against the machine's program and store,
    /// evolving both in place.
    Constant eval_expr(const Expr& expr) {
        if (!is_closed(expr))
            throw EvalError(EvalError::Kind::Internal,
                            "expression is not closed: " + print_expr(expr));
        return eval(expr, program_, 0);
    }

    Program& program() { return program_; }
    ObjectStore& store() { return store_; }
    Counters& counters() { return counters_; }
    const Counters& counters() const { return counters_; }

    Constant eval(const Expr& expr, Program& scope, std::uint64_t depth) {
        tick(depth);
        if (sink_) emit(TraceEvent::Kind::EvalEnter, "event=eval_enter expr=" +
                                                         detail::quoted(print_expr(expr)));
        switch (expr.kind()) {
        case Expr::Kind::Const:
            return expr.value();
        case Expr::Kind::Var:
            throw EvalError(EvalError::Kind::Internal,
                            "unbound variable " + expr.name() + " reached evaluation");
        case Expr::Kind::Call: {
            std::vector<Constant> args = eval_args(expr.args(), scope, depth);
            if (is_builtin(expr.name())) {
                Constant r = apply_builtin(expr.name(), args);
                if (sink_)
                    emit(TraceEvent::Kind::BuiltinApply,
                         "event=builtin_apply call=" + detail::quoted(print_call(expr.name(), args)) +
                             " result=" + print_constant(r));
                return r;
            }
            // rule 7: switch to backchaining over a copy of the scope
            Program search = scope;
            return backchain(search, scope, expr.name(), args, depth);
        }
        case Expr::Kind::LocatedCall: {
            std::vector<Constant> args = eval_args(expr.args(), scope, depth);
            if (!expr.path().concrete())
                throw EvalError(EvalError::Kind::Internal,
                                "non-concrete path in call " + print_expr(expr));
            return located_call(expr.path(), expr.name(), args, depth);
        }
        }
        throw EvalError(EvalError::Kind::Internal, "unreachable expression kind");
    }

    /// Evaluates arguments strictly left to right, threading the evolving
    /// scope so later arguments see earlier memo entries.
    std::vector<Constant> eval_args(const std::vector<Expr>& args, Program& scope,
                                    std::uint64_t depth) {
        std::vector<Constant> out;
        out.reserve(args.size());
        for (const auto& a : args) out.push_back(eval(a, scope, depth + 1));
        return out;
    }

    /// Scans `search` in order for the first definition matching the ground
    /// call and dispatches on its quantifier kind.
    Constant backchain(const Program& search, Program& scope, const std::string& head,
                       const std::vector<Constant>& args, std::uint64_t depth) {
        for (std::size_t i = 0; i < search.defs.size(); ++i) {
            const Definition& def = search.defs[i];
            Binding binding;
            if (!match_definition(def, head, args, binding)) continue;
            if (sink_)
                emit(TraceEvent::Kind::BackchainMatch,
                     "event=backchain_match index=" + std::to_string(i) +
                         " quant=" + detail::quant_name(def.quant) +
                         " call=" + detail::quoted(print_call(head, args)));
            switch (def.quant) {
            case Quantifier::Ground:
                return apply_ground(def, scope, head, args, depth);
            case Quantifier::BQ:
                return bc_b(substitute(def.clause, binding), scope, depth);
            case Quantifier::PUQ:
                return bc_p(substitute(def.clause, binding), scope, depth);
            }
        }
        throw EvalError(EvalError::Kind::NoMatchingClause,
                        "no matching clause for " + print_call(head, args));
    }

    /// Rule for ground definitions: switch back to evaluation mode on the
    /// body. Memo entries have constant bodies, so this is a single step,
    /// counted as a memo hit when the entry came from a PUQ evaluation.
    Constant apply_ground(const Definition& def, Program& scope, const std::string& head,
                          const std::vector<Constant>& args, std::uint64_t depth) {
        ++counters_.body_evals_ground;
        Constant v = eval(def.clause.body, scope, depth + 1);
        if (def.memo_entry) {
            ++counters_.memo_hits;
            if (sink_)
                emit(TraceEvent::Kind::MemoHit,
                     "event=memo_hit call=" + detail::quoted(print_call(head, args)) +
                         " value=" + print_constant(v));
        }
        return v;
    }

    /// Blind quantification: evaluate the instance body and discard the
    /// instance. Nothing is added to the scope.
    Constant bc_b(const Clause& instance, Program& scope, std::uint64_t depth) {
        ++counters_.body_evals_bq;
        return eval(instance.body, scope, depth + 1);
    }

    /// Parallel universal quantification: evaluate the instance body, then
    /// keep the computed instance by prepending h(c...) = K to the scope.
    Constant bc_p(const Clause& instance, Program& scope, std::uint64_t depth) {
        ++counters_.body_evals_puq;
        Constant v = eval(instance.body, scope, depth + 1);
        Definition memo;
        memo.quant = Quantifier::Ground;
        memo.clause.head = instance.head;
        memo.clause.params = instance.params;
        memo.clause.body = Expr::constant(v);
        memo.memo_entry = true;
        scope.prepend(memo);
        ++counters_.memo_adds;
        if (sink_)
            emit(TraceEvent::Kind::MemoAdd,
                 "event=memo_add def=" + detail::quoted(print_definition(scope.defs.front())));
        return v;
    }

    /// Dispatches a ground call to a location: direct lookup of the object,
    /// lazily instantiating it from a class entry when absent, then
    /// backchaining within the object's own definitions.
    Constant located_call(const LocationPath& path, const std::string& head,
                          const std::vector<Constant>& args, std::uint64_t depth) {
        ++counters_.path_resolutions;
        ObjectNode* node = store_.resolve(path);
        std::shared_ptr<ObjectNode> holder;  // keeps a transient BQ instance alive
        if (!node) {
            auto m = store_.match_class(path, &counters_.class_entry_scans);
            if (!m)
                throw EvalError(EvalError::Kind::UnknownLocation,
                                "unknown location " + print_path(path) + " for call " +
                                    print_call(head, args));
            ++counters_.instantiations;
            holder = instantiate(store_, *m->first, m->second, path);
            node = holder.get();
        }
        Program search = node->defs;
        return backchain(search, node->defs, head, args, depth);
    }

private:
    static bool match_definition(const Definition& def, const std::string& head,
                                 const std::vector<Constant>& args, Binding& binding) {
        if (def.clause.head != head || def.clause.params.size() != args.size()) return false;
        for (std::size_t i = 0; i < args.size(); ++i) {
            auto m = match_pattern(def.clause.params[i], args[i]);
            if (!m) return false;
            for (auto& [name, value] : *m) binding.insert_or_assign(name, value);
        }
        return true;
    }

    void tick(std::uint64_t depth) {
        ++counters_.steps;
        if (budget_.max_steps && counters_.steps > *budget_.max_steps)
            throw EvalError(EvalError::Kind::BudgetExceeded,
                            "step budget exceeded (" + std::to_string(*budget_.max_steps) +
                                " steps)");
        if (budget_.max_depth && depth > *budget_.max_depth)
            throw EvalError(EvalError::Kind::BudgetExceeded,
                            "depth budget exceeded (" + std::to_string(*budget_.max_depth) + ")");
    }

    void emit(TraceEvent::Kind kind, std::string line) { sink_(TraceEvent{kind, std::move(line)}); }

    Program program_;
    ObjectStore store_;
    Budget budget_;
    TraceSink sink_;
    Counters counters_;
};

/// One-shot evaluation of a closed expression.
inline EvalOutcome eval(const Program& program, const ObjectStore& store, const Expr& expr,
                        const Budget& budget = Budget::unlimited(), TraceSink sink = {}) {
    Machine m(program, store.clone(), budget, std::move(sink));
    Constant v = m.eval_expr(expr);
    return EvalOutcome{v, std::move(m.program()), std::move(m.store()), m.counters()};
}

inline EvalOutcome eval(const Program& program, const Expr& expr,
                        const Budget& budget = Budget::unlimited(), TraceSink sink = {}) {
    return eval(program, ObjectStore{}, expr, budget, std::move(sink));
}

}  // namespace puq

#endif  // PUQ_EVAL_HPP
