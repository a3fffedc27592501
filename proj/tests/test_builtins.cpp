#include <random>

#include "doctest.h"
#include "puq/builtins.hpp"

using namespace puq;

namespace {
Constant ci(long v) { return Constant::integer(Int(v)); }
Constant cb(bool b) { return Constant::boolean(b); }
}  // namespace

TEST_CASE("is_builtin covers exactly the primitive table") {
    for (const char* name : {"add", "sub", "mul", "div", "mod", "min", "max", "eq", "lt", "leq",
                             "ite"})
        CHECK(is_builtin(name));
    CHECK_FALSE(is_builtin("fib"));
    CHECK_FALSE(is_builtin("plus"));
    CHECK_FALSE(is_builtin(""));
}

TEST_CASE("arithmetic builtins") {
    CHECK(apply_builtin("add", {ci(1), ci(1)}) == ci(2));
    CHECK(apply_builtin("sub", {ci(0), ci(5)}) == ci(-5));
    CHECK(apply_builtin("mul", {ci(6), ci(7)}) == ci(42));
    CHECK(apply_builtin("min", {ci(3), ci(-2)}) == ci(-2));
    CHECK(apply_builtin("max", {ci(3), ci(-2)}) == ci(3));
}

TEST_CASE("comparisons return booleans") {
    CHECK(apply_builtin("eq", {ci(3), ci(3)}) == cb(true));
    CHECK(apply_builtin("eq", {ci(3), cb(true)}) == cb(false));
    CHECK(apply_builtin("eq", {Constant::top(), Constant::top()}) == cb(true));
    CHECK(apply_builtin("lt", {ci(2), ci(3)}) == cb(true));
    CHECK(apply_builtin("lt", {ci(3), ci(3)}) == cb(false));
    CHECK(apply_builtin("leq", {ci(3), ci(3)}) == cb(true));
}

TEST_CASE("ite selects an already-evaluated branch") {
    CHECK(apply_builtin("ite", {cb(true), ci(1), ci(2)}) == ci(1));
    CHECK(apply_builtin("ite", {cb(false), ci(1), ci(2)}) == ci(2));
    CHECK_THROWS_AS(apply_builtin("ite", {ci(0), ci(1), ci(2)}), EvalError);
}

TEST_CASE("division and modulo") {
    CHECK(apply_builtin("div", {ci(7), ci(2)}) == ci(3));
    CHECK(apply_builtin("div", {ci(-7), ci(2)}) == ci(-3));  // truncation toward zero
    CHECK(apply_builtin("mod", {ci(7), ci(2)}) == ci(1));

    CHECK_THROWS_WITH_AS(apply_builtin("div", {ci(7), ci(0)}),
                         "division by zero in div(7, 0)", EvalError);
    CHECK_THROWS_AS(apply_builtin("mod", {ci(7), ci(0)}), EvalError);
}

TEST_CASE("kind and arity mismatches are type errors naming the call") {
    try {
        apply_builtin("add", {ci(1), cb(true)});
        FAIL("expected a type error");
    } catch (const EvalError& e) {
        CHECK(e.kind() == EvalError::Kind::Type);
        CHECK(std::string(e.what()).find("add(1, true)") != std::string::npos);
    }
    CHECK_THROWS_AS(apply_builtin("add", {ci(1)}), EvalError);
    CHECK_THROWS_AS(apply_builtin("lt", {cb(true), cb(false)}), EvalError);
}

TEST_CASE("a = div(a,b)*b + mod(a,b) and add/mul are commutative-associative") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<long> val(-200, 200);
    for (int i = 0; i < 300; ++i) {
        Int a(val(rng)), b(val(rng)), c(val(rng));
        if (b != 0) {
            Int q = apply_builtin("div", {Constant::integer(a), Constant::integer(b)}).as_integer();
            Int r = apply_builtin("mod", {Constant::integer(a), Constant::integer(b)}).as_integer();
            CHECK(q * b + r == a);
        }
        auto A = Constant::integer(a), B = Constant::integer(b), C = Constant::integer(c);
        CHECK(apply_builtin("add", {A, B}) == apply_builtin("add", {B, A}));
        CHECK(apply_builtin("mul", {A, B}) == apply_builtin("mul", {B, A}));
        CHECK(apply_builtin("add", {apply_builtin("add", {A, B}), C}) ==
              apply_builtin("add", {A, apply_builtin("add", {B, C})}));
        CHECK(apply_builtin("mul", {apply_builtin("mul", {A, B}), C}) ==
              apply_builtin("mul", {A, apply_builtin("mul", {B, C})}));
    }
}
