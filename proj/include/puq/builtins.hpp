#ifndef PUQ_BUILTINS_HPP
#define PUQ_BUILTINS_HPP

#include <string>
#include <vector>

#include "puq/ast.hpp"
#include "puq/print.hpp"

namespace puq {

/// Primitive operations over constants. All builtins are pure and eager;
/// ite receives both branches already evaluated.
inline bool is_builtin(const std::string& name) {
    return name == "add" || name == "sub" || name == "mul" || name == "div" || name == "mod" ||
           name == "min" || name == "max" || name == "eq" || name == "lt" || name == "leq" ||
           name == "ite";
}

inline std::size_t builtin_arity(const std::string& name) { return name == "ite" ? 3 : 2; }

namespace detail {

inline const Int& want_int(const std::string& name, const std::vector<Constant>& args,
                           std::size_t i) {
    if (!args[i].is_integer())
        throw EvalError(EvalError::Kind::Type, "type error in " + print_call(name, args) +
                                                   ": operand " + std::to_string(i + 1) +
                                                   " is not an integer");
    return args[i].as_integer();
}

}  // namespace detail

inline Constant apply_builtin(const std::string& name, const std::vector<Constant>& args) {
    if (!is_builtin(name))
        throw EvalError(EvalError::Kind::Internal, "not a builtin: " + name);
    if (args.size() != builtin_arity(name))
        throw EvalError(EvalError::Kind::Type,
                        "arity error in " + print_call(name, args) + ": " + name + " takes " +
                            std::to_string(builtin_arity(name)) + " arguments");

    if (name == "eq") return Constant::boolean(args[0] == args[1]);

    if (name == "ite") {
        if (!args[0].is_boolean())
            throw EvalError(EvalError::Kind::Type, "type error in " + print_call(name, args) +
                                                       ": condition is not a boolean");
        return args[0].as_boolean() ? args[1] : args[2];
    }

    const Int& a = detail::want_int(name, args, 0);
    const Int& b = detail::want_int(name, args, 1);

    if (name == "add") return Constant::integer(a + b);
    if (name == "sub") return Constant::integer(a - b);
    if (name == "mul") return Constant::integer(a * b);
    if (name == "min") return Constant::integer(a < b ? a : b);
    if (name == "max") return Constant::integer(a < b ? b : a);
    if (name == "lt") return Constant::boolean(a < b);
    if (name == "leq") return Constant::boolean(a <= b);

    // div truncates toward zero; mod satisfies a = div(a,b)*b + mod(a,b).
    if (b == 0)
        throw EvalError(EvalError::Kind::Arithmetic,
                        "division by zero in " + print_call(name, args));
    if (name == "div") return Constant::integer(a / b);
    return Constant::integer(a % b);  // mod
}

}  // namespace puq

#endif  // PUQ_BUILTINS_HPP
