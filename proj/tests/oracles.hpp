// Independent oracles used to freeze expected values. These must stay
// implementation-free: plain iterative/tabular computations only.
#ifndef PUQ_TESTS_ORACLES_HPP
#define PUQ_TESTS_ORACLES_HPP

#include <vector>

#include "puq/ast.hpp"

namespace oracles {

// Fibonacci with F(0) = F(1) = 1, iteratively.
inline puq::Int fib(unsigned n) {
    puq::Int a = 1, b = 1;
    for (unsigned i = 0; i < n; ++i) {
        puq::Int next = a + b;
        a = b;
        b = next;
    }
    return a;
}

// Tribonacci with T(0) = T(1) = T(2) = 1.
inline puq::Int trib(unsigned n) {
    std::vector<puq::Int> t{1, 1, 1};
    for (unsigned i = 3; i <= n; ++i) t.push_back(t[i - 1] + t[i - 2] + t[i - 3]);
    return t[n];
}

// Lattice paths from (0,0) to (m,n) moving only +1 in one coordinate.
inline puq::Int grid_paths(unsigned m, unsigned n) {
    std::vector<std::vector<puq::Int>> g(m + 1, std::vector<puq::Int>(n + 1, 1));
    for (unsigned i = 1; i <= m; ++i)
        for (unsigned j = 1; j <= n; ++j) g[i][j] = g[i - 1][j] + g[i][j - 1];
    return g[m][n];
}

// Number of fib-clause evaluations a plain recursive (BQ) evaluation of
// fib(n) performs: every node of the call tree evaluates one clause body,
// and the tree has 2*F(n) - 1 nodes.
inline puq::Int bq_fib_clause_evals(unsigned n) { return 2 * fib(n) - 1; }

}  // namespace oracles

#endif  // PUQ_TESTS_ORACLES_HPP
