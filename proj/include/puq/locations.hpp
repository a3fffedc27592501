#ifndef PUQ_LOCATIONS_HPP
#define PUQ_LOCATIONS_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "puq/ast.hpp"
#include "puq/print.hpp"
#include "puq/subst.hpp"

namespace puq {

/// Key of one path segment: name plus optional constant index.
using SegKey = std::pair<std::string, std::optional<Constant>>;

inline SegKey seg_key(const Segment& s) { return {s.name, s.const_index}; }

/// A location-addressed object: its own ordered definitions plus children.
/// Memoized method results are prepended to defs, exactly as in the flat
/// evolving program.
struct ObjectNode {
    Program defs;
    std::map<SegKey, std::shared_ptr<ObjectNode>> children;

    std::shared_ptr<ObjectNode> clone() const {
        auto n = std::make_shared<ObjectNode>();
        n->defs = defs;
        for (const auto& [k, child] : children) n->children.emplace(k, child->clone());
        return n;
    }

    friend bool operator==(const ObjectNode& a, const ObjectNode& b) {
        if (a.defs != b.defs || a.children.size() != b.children.size()) return false;
        auto it = b.children.begin();
        for (const auto& [k, child] : a.children) {
            if (it->first != k || !(*child == *it->second)) return false;
            ++it;
        }
        return true;
    }
    friend bool operator!=(const ObjectNode& a, const ObjectNode& b) { return !(a == b); }
};

/// A pattern-addressed located definition, e.g. pforall x. at /a[x+2]: ...
/// Concrete objects are instantiated from it lazily on first use.
struct ClassEntry {
    LocationPath path;  // at least one pattern index
    Quantifier quant = Quantifier::BQ;
    std::vector<std::string> vars;
    Clause clause;

    friend bool operator==(const ClassEntry& a, const ClassEntry& b) {
        return a.path == b.path && a.quant == b.quant && a.vars == b.vars && a.clause == b.clause;
    }
    friend bool operator!=(const ClassEntry& a, const ClassEntry& b) { return !(a == b); }
};

class ObjectStore {
public:
    std::map<SegKey, std::shared_ptr<ObjectNode>> roots;
    std::vector<ClassEntry> class_entries;

    bool empty() const { return roots.empty() && class_entries.empty(); }

    ObjectStore clone() const {
        ObjectStore s;
        s.class_entries = class_entries;
        for (const auto& [k, node] : roots) s.roots.emplace(k, node->clone());
        return s;
    }

    /// Direct lookup of a concrete path: exact segment-key walk, no scanning
    /// and no class instantiation.
    ObjectNode* resolve(const LocationPath& path) {
        const std::map<SegKey, std::shared_ptr<ObjectNode>>* level = &roots;
        ObjectNode* node = nullptr;
        for (const auto& seg : path.segments) {
            auto it = level->find(seg_key(seg));
            if (it == level->end()) return nullptr;
            node = it->second.get();
            level = &node->children;
        }
        return node;
    }
    const ObjectNode* resolve(const LocationPath& path) const {
        return const_cast<ObjectStore*>(this)->resolve(path);
    }

    /// Walks to the node at `path`, creating empty intermediate nodes.
    ObjectNode& ensure(const LocationPath& path) {
        std::map<SegKey, std::shared_ptr<ObjectNode>>* level = &roots;
        ObjectNode* node = nullptr;
        for (const auto& seg : path.segments) {
            auto [it, inserted] = level->try_emplace(seg_key(seg));
            if (inserted) it->second = std::make_shared<ObjectNode>();
            node = it->second.get();
            level = &node->children;
        }
        return *node;
    }

    /// First class entry whose path matches the concrete path segment-wise,
    /// with the binding collected from its pattern indices. `scanned`, when
    /// given, counts the entries examined.
    std::optional<std::pair<const ClassEntry*, Binding>> match_class(
        const LocationPath& path, std::uint64_t* scanned = nullptr) const {
        for (const auto& entry : class_entries) {
            if (scanned) ++*scanned;
            Binding binding;
            if (match_class_path(entry.path, path, binding)) return {{&entry, binding}};
        }
        return std::nullopt;
    }

    friend bool operator==(const ObjectStore& a, const ObjectStore& b) {
        if (a.class_entries != b.class_entries || a.roots.size() != b.roots.size()) return false;
        auto it = b.roots.begin();
        for (const auto& [k, node] : a.roots) {
            if (it->first != k || !(*node == *it->second)) return false;
            ++it;
        }
        return true;
    }
    friend bool operator!=(const ObjectStore& a, const ObjectStore& b) { return !(a == b); }

private:
    static bool match_class_path(const LocationPath& pattern, const LocationPath& concrete,
                                 Binding& binding) {
        if (pattern.segments.size() != concrete.segments.size()) return false;
        for (std::size_t i = 0; i < pattern.segments.size(); ++i) {
            const Segment& p = pattern.segments[i];
            const Segment& c = concrete.segments[i];
            if (p.name != c.name) return false;
            if (p.pattern_index) {
                if (!c.const_index) return false;
                auto m = match_pattern(*p.pattern_index, *c.const_index);
                if (!m) return false;
                for (auto& [name, value] : *m) {
                    auto [it, inserted] = binding.emplace(name, value);
                    if (!inserted && it->second != value) return false;
                }
            } else if (p.const_index != c.const_index) {
                return false;
            }
        }
        return true;
    }
};

/// Builds the definition an instantiated object carries: the class clause
/// substituted at the binding, keeping the class quantifier over whatever
/// head variables the path match left unbound (usually none).
inline Definition make_instance_def(const ClassEntry& entry, const Binding& binding) {
    Definition d;
    d.quant = entry.quant;
    d.clause = substitute(entry.clause, binding);
    d.vars = pattern_vars(d.clause.params);
    return d;
}

/// Instantiates a class match at a concrete path. PUQ class instances persist
/// in the store; BQ instances are transient and must not be stored (callers
/// keep the returned node alive for the duration of the call). A node already
/// present at the path wins: instantiation is a no-op then.
inline std::shared_ptr<ObjectNode> instantiate(ObjectStore& store, const ClassEntry& entry,
                                               const Binding& binding, const LocationPath& path) {
    if (entry.quant == Quantifier::PUQ) {
        ObjectNode& node = store.ensure(path);
        if (node.defs.defs.empty() && node.children.empty())
            node.defs.defs.push_back(make_instance_def(entry, binding));
        // shared ownership lives in the store; hand out an alias
        return std::shared_ptr<ObjectNode>(&node, [](ObjectNode*) {});
    }
    auto node = std::make_shared<ObjectNode>();
    node->defs.defs.push_back(make_instance_def(entry, binding));
    return node;
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

inline std::string print_class_entry(const ClassEntry& e) {
    Definition d;
    d.quant = e.quant;
    d.vars = e.vars;
    std::string out = quantifier_prefix(d);
    out += "at " + print_path(e.path) + ": " + print_clause(e.clause);
    return out;
}

namespace detail {

inline void dump_node(const LocationPath& path, const ObjectNode& node, std::string& out) {
    if (!node.defs.defs.empty()) {
        out += "at " + print_path(path) + ":\n";
        for (const auto& d : node.defs.defs) {
            out += "  " + print_definition(d) + "\n";
        }
    }
    for (const auto& [key, child] : node.children) {
        LocationPath sub = path;
        Segment seg;
        seg.name = key.first;
        seg.const_index = key.second;
        sub.segments.push_back(seg);
        dump_node(sub, *child, out);
    }
}

inline void source_node(const LocationPath& path, const ObjectNode& node, std::string& out) {
    for (const auto& d : node.defs.defs) {
        out += quantifier_prefix(d) + "at " + print_path(path) + ": " + print_clause(d.clause) +
               "\n";
    }
    for (const auto& [key, child] : node.children) {
        LocationPath sub = path;
        Segment seg;
        seg.name = key.first;
        seg.const_index = key.second;
        sub.segments.push_back(seg);
        source_node(sub, *child, out);
    }
}

}  // namespace detail

/// Human-oriented store listing: one block per object, stable path order,
/// class entries last.
inline std::string dump_store(const ObjectStore& store) {
    std::string out;
    for (const auto& [key, node] : store.roots) {
        LocationPath path;
        Segment seg;
        seg.name = key.first;
        seg.const_index = key.second;
        path.segments.push_back(seg);
        detail::dump_node(path, *node, out);
    }
    for (const auto& e : store.class_entries) {
        out += print_class_entry(e);
        out += "\n";
    }
    return out;
}

/// Re-parseable rendering of a whole source program: flat definitions, then
/// located definitions one per line, then class entries in source order.
inline std::string to_source(const Program& program, const ObjectStore& store) {
    std::string out = pretty_print(program);
    for (const auto& [key, node] : store.roots) {
        LocationPath path;
        Segment seg;
        seg.name = key.first;
        seg.const_index = key.second;
        path.segments.push_back(seg);
        detail::source_node(path, *node, out);
    }
    for (const auto& e : store.class_entries) {
        out += print_class_entry(e);
        out += "\n";
    }
    return out;
}

}  // namespace puq

#endif  // PUQ_LOCATIONS_HPP
