#ifndef PUQ_ERRORS_HPP
#define PUQ_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace puq {

/// Syntax or scope error with a source position (1-based line/column).
class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& msg)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          line_(line),
          column_(column) {}

    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

/// Runtime evaluation failure. The message names the innermost offending call.
class EvalError : public std::runtime_error {
public:
    enum class Kind {
        NoMatchingClause,
        Arithmetic,
        Type,
        UnknownLocation,
        BudgetExceeded,
        Internal,
    };

    EvalError(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}

    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

}  // namespace puq

#endif  // PUQ_ERRORS_HPP
