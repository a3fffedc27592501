#include <string>
#include <vector>

#include "doctest.h"
#include "puq/locations.hpp"
#include "puq/parse.hpp"
#include "puq/print.hpp"

using namespace puq;

TEST_CASE("flat definitions") {
    SourceProgram sp = parse_program("def fib(0) = 1;");
    REQUIRE(sp.program.defs.size() == 1);
    const Definition& d = sp.program.defs[0];
    CHECK(d.quant == Quantifier::Ground);
    CHECK(d.clause.head == "fib");
    REQUIRE(d.clause.params.size() == 1);
    CHECK(d.clause.params[0] == Pattern::lit_int(0));
    CHECK(d.clause.body == Expr::constant(Constant::integer(1)));
    CHECK(sp.store.empty());
    REQUIRE(sp.origins.size() == 1);
    CHECK(sp.origins[0].line == 1);
}

TEST_CASE("quantified definitions") {
    SourceProgram sp = parse_program("pforall x. def fib(x+2) = fib(x+1) + fib(x);");
    REQUIRE(sp.program.defs.size() == 1);
    const Definition& d = sp.program.defs[0];
    CHECK(d.quant == Quantifier::PUQ);
    CHECK(d.vars == std::vector<std::string>{"x"});
    CHECK(d.clause.params[0] == Pattern::succ("x", 1 + 1));

    SourceProgram bq = parse_program("forall x, y. def pair(x, y) = x + y;");
    CHECK(bq.program.defs[0].quant == Quantifier::BQ);
    CHECK(bq.program.defs[0].vars == std::vector<std::string>{"x", "y"});
}

TEST_CASE("located and class definitions split between program and store") {
    SourceProgram sp = parse_program(
        "at /a[1]: def fib(1) = 1;\n"
        "at /a[2]: def fib(2) = 1;\n"
        "pforall x. at /a[x+2]: def fib(x+2) = /a[x+1].fib(x+1) + /a[x].fib(x);\n"
        "forall n. at /fib: def fib(n) = /a[n].fib(n);\n");
    CHECK(sp.program.defs.empty());
    REQUIRE(sp.store.class_entries.size() == 1);
    CHECK(sp.store.class_entries[0].quant == Quantifier::PUQ);

    LocationPath a1;
    a1.segments.push_back({"a", Constant::integer(1), {}});
    const ObjectNode* node = sp.store.resolve(a1);
    REQUIRE(node != nullptr);
    REQUIRE(node->defs.defs.size() == 1);
    CHECK(node->defs.defs[0].clause.head == "fib");

    LocationPath floc;
    floc.segments.push_back({"fib", {}, {}});
    const ObjectNode* fib = sp.store.resolve(floc);
    REQUIRE(fib != nullptr);
    CHECK(fib->defs.defs[0].quant == Quantifier::BQ);
}

TEST_CASE("nested located definitions create intermediate nodes") {
    SourceProgram sp = parse_program("at /a/b[1]: def g(1) = 7;");
    LocationPath ab1;
    ab1.segments.push_back({"a", {}, {}});
    ab1.segments.push_back({"b", Constant::integer(1), {}});
    const ObjectNode* node = sp.store.resolve(ab1);
    REQUIRE(node != nullptr);
    CHECK(node->defs.defs.size() == 1);

    LocationPath a;
    a.segments.push_back({"a", {}, {}});
    const ObjectNode* parent = sp.store.resolve(a);
    REQUIRE(parent != nullptr);
    CHECK(parent->defs.defs.empty());
}

TEST_CASE("expressions") {
    CHECK(parse_expr("fib(3)") ==
          Expr::call("fib", {Expr::constant(Constant::integer(3))}));

    Expr located = parse_expr("/fib.fib(4)");
    REQUIRE(located.kind() == Expr::Kind::LocatedCall);
    CHECK(located.path().segments.size() == 1);
    CHECK(located.path().segments[0].name == "fib");
    CHECK(located.name() == "fib");

    // precedence: *, then + -, then comparisons
    CHECK(parse_expr("1 + 2 * 3") ==
          Expr::call("add", {Expr::constant(Constant::integer(1)),
                             Expr::call("mul", {Expr::constant(Constant::integer(2)),
                                                Expr::constant(Constant::integer(3))})}));
    CHECK(parse_expr("1 + 2 < 4") ==
          Expr::call("lt", {parse_expr("1 + 2"), Expr::constant(Constant::integer(4))}));
    CHECK(parse_expr("2 - 1 - 1") == parse_expr("(2 - 1) - 1"));
    CHECK(parse_expr("top") == Expr::top());
    CHECK(parse_expr("-5") == Expr::constant(Constant::integer(-5)));
    CHECK(parse_expr("ite(1 = 1, 2, 3)") ==
          Expr::call("ite", {Expr::call("eq", {Expr::constant(Constant::integer(1)),
                                               Expr::constant(Constant::integer(1))}),
                             Expr::constant(Constant::integer(2)),
                             Expr::constant(Constant::integer(3))}));
}

TEST_CASE("a 0-ary call is distinct from a variable") {
    SourceProgram sp = parse_program("def k() = 9; def use(0) = k();");
    CHECK(sp.program.defs[1].clause.body == Expr::call("k", {}));
    CHECK_THROWS_AS(parse_expr("k"), ParseError);  // bare identifier is a free variable
    CHECK(parse_expr("k()") == Expr::call("k", {}));
}

TEST_CASE("rejections carry positions") {
    // unbound body variable
    try {
        parse_program("def f(x) = y;");
        FAIL("expected a scope error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 12);
        CHECK(std::string(e.what()).find("unbound variable y") != std::string::npos);
    }

    // pattern variables without a quantifier
    CHECK_THROWS_AS(parse_program("def f(x) = x;"), ParseError);
    // quantifier/pattern variable mismatch
    CHECK_THROWS_AS(parse_program("forall x, z. def f(x) = x;"), ParseError);
    CHECK_THROWS_AS(parse_program("forall x. def f(0) = 1;"), ParseError);
    // duplicate pattern variable (nonlinear head)
    CHECK_THROWS_AS(parse_program("forall x. def f(x, x) = x;"), ParseError);
    // builtin name collision
    CHECK_THROWS_AS(parse_program("def add(0) = 1;"), ParseError);
    // pattern index in an unquantified located definition
    CHECK_THROWS_AS(parse_program("at /a[x]: def f(0) = 1;"), ParseError);
    // syntax errors
    CHECK_THROWS_AS(parse_program("def f(0) = ;"), ParseError);
    CHECK_THROWS_AS(parse_program("def f(0) 1;"), ParseError);
    CHECK_THROWS_AS(parse_expr("fib(3"), ParseError);
    CHECK_THROWS_AS(parse_expr("x + 1"), ParseError);  // free variable

    try {
        parse_program("def ok(0) = 1;\ndef f(0) = @;");
        FAIL("expected a syntax error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("comments and whitespace") {
    SourceProgram sp = parse_program(
        "-- fibonacci base cases\n"
        "def fib(0) = 1; -- trailing note\n"
        "def fib(1) = 1;\n");
    CHECK(sp.program.defs.size() == 2);
}

static const char* kCorpus[] = {
    // flat ground
    "def f(0) = 1;\n",
    // flat BQ
    "forall x. def id(x) = x;\n",
    // flat PUQ (the fib program)
    "def fib(0) = 1;\ndef fib(1) = 1;\npforall x. def fib(x+2) = fib(x+1) + fib(x);\n",
    // booleans, top, 0-ary
    "def b(true) = false;\ndef t() = top;\n",
    // builtins and sugar, precedence
    "forall x, y. def h(x, y) = ite(x = y, x * 2, x - y - 1);\n",
    // explicit builtin call names
    "forall a, b. def m(a, b) = min(a, b) + max(a, b) + div(a, 2) + mod(b, 3);\n",
    // comparisons
    "forall x. def cmp(x) = ite(x <= 10, 1, 0);\n",
    // located concrete objects
    "at /a[1]: def fib(1) = 1;\nat /a[2]: def fib(2) = 1;\n",
    // class entry plus dispatcher object
    "pforall x. at /a[x+2]: def fib(x+2) = /a[x+1].fib(x+1) + /a[x].fib(x);\n"
    "forall n. at /fib: def fib(n) = /a[n].fib(n);\n",
    // nested objects and nested class
    "at /a/b[1]: def g(1) = 1;\npforall x. at /a/b[x+1]: def g(x+1) = /a/b[x].g(x) + 1;\n",
    // mixed flat and located in one file
    "def k(0) = 1;\nat /obj: def m(0) = 2;\nforall v. at /obj: def n(v) = v + m(0);\n",
    // multi-variable class path
    "pforall i, j. at /grid[i]/cell[j]: def w(i, j) = i * 10 + j;\n",
    // negative literals and multi-arg heads
    "forall x, y, z. def f3(x, y, z) = x + y * z - -2;\n",
};

TEST_CASE("round-trip: parse of printed source is the identity") {
    for (const char* text : kCorpus) {
        CAPTURE(text);
        SourceProgram once = parse_program(text);
        std::string printed = to_source(once.program, once.store);
        SourceProgram twice = parse_program(printed);
        CHECK(once.program == twice.program);
        CHECK(once.store == twice.store);
        // and printing is a fixed point from the first round on
        CHECK(to_source(twice.program, twice.store) == printed);
    }
}
