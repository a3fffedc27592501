#ifndef PUQ_AST_HPP
#define PUQ_AST_HPP

#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "puq/errors.hpp"

namespace puq {

using Int = boost::multiprecision::cpp_int;

// ---------------------------------------------------------------------------
// Constants
// ---------------------------------------------------------------------------

/// A ground value: arbitrary-precision integer, boolean, or the top marker.
class Constant {
public:
    enum class Kind { Integer, Boolean, Top };

    static Constant integer(Int v) {
        Constant c;
        c.kind_ = Kind::Integer;
        c.int_ = std::move(v);
        return c;
    }
    static Constant boolean(bool b) {
        Constant c;
        c.kind_ = Kind::Boolean;
        c.bool_ = b;
        return c;
    }
    static Constant top() {
        Constant c;
        c.kind_ = Kind::Top;
        return c;
    }

    Kind kind() const { return kind_; }
    bool is_integer() const { return kind_ == Kind::Integer; }
    bool is_boolean() const { return kind_ == Kind::Boolean; }
    bool is_top() const { return kind_ == Kind::Top; }

    const Int& as_integer() const { return int_; }
    bool as_boolean() const { return bool_; }

    friend bool operator==(const Constant& a, const Constant& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
        case Kind::Integer: return a.int_ == b.int_;
        case Kind::Boolean: return a.bool_ == b.bool_;
        case Kind::Top: return true;
        }
        return false;
    }
    friend bool operator!=(const Constant& a, const Constant& b) { return !(a == b); }

    // Total order used for store keys and stable dumps: top < booleans < integers.
    friend bool operator<(const Constant& a, const Constant& b) {
        if (a.kind_ != b.kind_) return rank(a.kind_) < rank(b.kind_);
        switch (a.kind_) {
        case Kind::Integer: return a.int_ < b.int_;
        case Kind::Boolean: return a.bool_ < b.bool_;
        case Kind::Top: return false;
        }
        return false;
    }

private:
    static int rank(Kind k) {
        switch (k) {
        case Kind::Top: return 0;
        case Kind::Boolean: return 1;
        case Kind::Integer: return 2;
        }
        return 3;
    }

    Kind kind_ = Kind::Top;
    Int int_;
    bool bool_ = false;
};

using Binding = std::map<std::string, Constant>;

// ---------------------------------------------------------------------------
// Patterns
// ---------------------------------------------------------------------------

/// Head parameter pattern: literal, variable, or variable-plus-offset.
struct Pattern {
    enum class Kind { LitInt, LitBool, Var, Succ };

    static Pattern lit_int(Int k) {
        Pattern p;
        p.kind = Kind::LitInt;
        p.lit = std::move(k);
        return p;
    }
    static Pattern lit_bool(bool b) {
        Pattern p;
        p.kind = Kind::LitBool;
        p.lit_b = b;
        return p;
    }
    static Pattern var(std::string name) {
        Pattern p;
        p.kind = Kind::Var;
        p.name = std::move(name);
        return p;
    }
    static Pattern succ(std::string name, Int offset) {
        Pattern p;
        p.kind = Kind::Succ;
        p.name = std::move(name);
        p.lit = std::move(offset);  // offset >= 1
        return p;
    }

    Kind kind = Kind::Var;
    Int lit;            // LitInt value or Succ offset
    bool lit_b = false; // LitBool value
    std::string name;   // Var / Succ variable

    bool is_literal() const { return kind == Kind::LitInt || kind == Kind::LitBool; }

    friend bool operator==(const Pattern& a, const Pattern& b) {
        if (a.kind != b.kind) return false;
        switch (a.kind) {
        case Kind::LitInt: return a.lit == b.lit;
        case Kind::LitBool: return a.lit_b == b.lit_b;
        case Kind::Var: return a.name == b.name;
        case Kind::Succ: return a.name == b.name && a.lit == b.lit;
        }
        return false;
    }
    friend bool operator!=(const Pattern& a, const Pattern& b) { return !(a == b); }
};

/// Matches one pattern against one constant. No-match is a value, not an error.
/// Succ patterns follow the natural-number reading: x+k matches c iff c >= k.
inline std::optional<Binding> match_pattern(const Pattern& p, const Constant& c) {
    switch (p.kind) {
    case Pattern::Kind::LitInt:
        if (c.is_integer() && c.as_integer() == p.lit) return Binding{};
        return std::nullopt;
    case Pattern::Kind::LitBool:
        if (c.is_boolean() && c.as_boolean() == p.lit_b) return Binding{};
        return std::nullopt;
    case Pattern::Kind::Var:
        return Binding{{p.name, c}};
    case Pattern::Kind::Succ:
        if (c.is_integer() && c.as_integer() >= p.lit)
            return Binding{{p.name, Constant::integer(c.as_integer() - p.lit)}};
        return std::nullopt;
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Location paths
// ---------------------------------------------------------------------------

/// A path segment: name plus optional index. The index is a constant for
/// concrete paths and a pattern for class paths.
struct Segment {
    std::string name;
    // absent | constant | pattern
    std::optional<Constant> const_index;
    std::optional<Pattern> pattern_index;

    bool concrete() const { return !pattern_index.has_value(); }

    friend bool operator==(const Segment& a, const Segment& b) {
        return a.name == b.name && a.const_index == b.const_index &&
               a.pattern_index == b.pattern_index;
    }
    friend bool operator!=(const Segment& a, const Segment& b) { return !(a == b); }
};

struct LocationPath {
    std::vector<Segment> segments;

    bool concrete() const {
        for (const auto& s : segments)
            if (!s.concrete()) return false;
        return true;
    }

    friend bool operator==(const LocationPath& a, const LocationPath& b) {
        return a.segments == b.segments;
    }
    friend bool operator!=(const LocationPath& a, const LocationPath& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// Expressions
// ---------------------------------------------------------------------------

/// Immutable expression tree with cheap (shared) copies.
class Expr {
public:
    enum class Kind { Const, Var, Call, LocatedCall };

    Expr() : Expr(constant(Constant::top())) {}

    static Expr constant(Constant c) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Const;
        n->value = std::move(c);
        return Expr(std::move(n));
    }
    static Expr top() { return constant(Constant::top()); }
    static Expr var(std::string name) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Var;
        n->name = std::move(name);
        return Expr(std::move(n));
    }
    static Expr call(std::string head, std::vector<Expr> args) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::Call;
        n->name = std::move(head);
        n->args = std::move(args);
        return Expr(std::move(n));
    }
    static Expr located_call(LocationPath path, std::string head, std::vector<Expr> args) {
        auto n = std::make_shared<Node>();
        n->kind = Kind::LocatedCall;
        n->path = std::move(path);
        n->name = std::move(head);
        n->args = std::move(args);
        return Expr(std::move(n));
    }

    Kind kind() const { return node_->kind; }
    const Constant& value() const { return node_->value; }
    const std::string& name() const { return node_->name; }
    const std::vector<Expr>& args() const { return node_->args; }
    const LocationPath& path() const { return node_->path; }

    friend bool operator==(const Expr& a, const Expr& b) {
        if (a.node_ == b.node_) return true;
        if (a.kind() != b.kind()) return false;
        switch (a.kind()) {
        case Kind::Const: return a.value() == b.value();
        case Kind::Var: return a.name() == b.name();
        case Kind::Call: return a.name() == b.name() && a.args() == b.args();
        case Kind::LocatedCall:
            return a.path() == b.path() && a.name() == b.name() && a.args() == b.args();
        }
        return false;
    }
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    struct Node {
        Kind kind = Kind::Const;
        Constant value;
        std::string name;
        std::vector<Expr> args;
        LocationPath path;
    };

    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

// ---------------------------------------------------------------------------
// Clauses, definitions, programs
// ---------------------------------------------------------------------------

enum class Quantifier { Ground, BQ, PUQ };

struct Clause {
    std::string head;
    std::vector<Pattern> params;
    Expr body;

    friend bool operator==(const Clause& a, const Clause& b) {
        return a.head == b.head && a.params == b.params && a.body == b.body;
    }
    friend bool operator!=(const Clause& a, const Clause& b) { return !(a == b); }
};

struct Definition {
    Quantifier quant = Quantifier::Ground;
    std::vector<std::string> vars;  // quantified variables; empty for Ground
    Clause clause;
    bool memo_entry = false;  // runtime: created by a PUQ body evaluation

    // memo_entry is runtime provenance, not structure.
    friend bool operator==(const Definition& a, const Definition& b) {
        return a.quant == b.quant && a.vars == b.vars && a.clause == b.clause;
    }
    friend bool operator!=(const Definition& a, const Definition& b) { return !(a == b); }
};

/// An ordered sequence of definitions. First match wins; evolution prepends.
struct Program {
    std::deque<Definition> defs;

    void prepend(Definition d) { defs.push_front(std::move(d)); }

    friend bool operator==(const Program& a, const Program& b) { return a.defs == b.defs; }
    friend bool operator!=(const Program& a, const Program& b) { return !(a == b); }
};

/// True when `suffix` is a suffix of `whole` (prepend-only evolution check).
inline bool is_suffix(const Program& suffix, const Program& whole) {
    if (suffix.defs.size() > whole.defs.size()) return false;
    auto offset = whole.defs.size() - suffix.defs.size();
    for (std::size_t i = 0; i < suffix.defs.size(); ++i)
        if (!(whole.defs[offset + i] == suffix.defs[i])) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Free variables and substitution
// ---------------------------------------------------------------------------

inline void collect_free_vars(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
    case Expr::Kind::Const:
        return;
    case Expr::Kind::Var:
        out.insert(e.name());
        return;
    case Expr::Kind::LocatedCall:
        for (const auto& seg : e.path().segments)
            if (seg.pattern_index) out.insert(seg.pattern_index->name);
        [[fallthrough]];
    case Expr::Kind::Call:
        for (const auto& a : e.args()) collect_free_vars(a, out);
        return;
    }
}

inline std::set<std::string> free_vars(const Expr& e) {
    std::set<std::string> out;
    collect_free_vars(e, out);
    return out;
}

inline bool is_closed(const Expr& e) { return free_vars(e).empty(); }

/// Pattern variables of a clause head, in order of first occurrence.
inline std::vector<std::string> pattern_vars(const std::vector<Pattern>& params) {
    std::vector<std::string> out;
    for (const auto& p : params)
        if (p.kind == Pattern::Kind::Var || p.kind == Pattern::Kind::Succ) out.push_back(p.name);
    return out;
}

}  // namespace puq

#endif  // PUQ_AST_HPP
