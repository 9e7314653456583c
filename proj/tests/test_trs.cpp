#include <fstream>
#include <sstream>

#include "doctest.h"

#include "lposat/tpdb.hpp"

using namespace lposat;

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path);
    REQUIRE(in.good());
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

} // namespace

TEST_CASE("terms are hash-consed") {
    TermArena arena;
    const Term *x1 = arena.variable("X");
    const Term *x2 = arena.variable("X");
    CHECK(x1 == x2);
    CHECK(x1->is_var);

    const Term *a = arena.app("a");
    CHECK(a != arena.variable("a")); // same name, different species
    CHECK_FALSE(a->is_var);

    const Term *fxa1 = arena.app("f", {x1, a});
    const Term *fxa2 = arena.app("f", {arena.variable("X"), arena.app("a")});
    CHECK(fxa1 == fxa2);
    CHECK(fxa1 != arena.app("f", {a, x1}));
    CHECK(fxa1->arity() == 2);
}

TEST_CASE("term printing and variable collection") {
    TermArena arena;
    const Term *t = arena.app(
        "f", {arena.variable("X"), arena.app("g", {arena.app("a")})});
    CHECK(to_string(t) == "f(X,g(a))");
    CHECK(term_vars(t) == std::set<std::string>{"X"});
    CHECK(term_vars(arena.app("a")).empty());
}

TEST_CASE("parsing the bundled boolean normalization system") {
    Trs trs = parse_trs(read_file(std::string(LPOSAT_DATA_DIR) +
                                  "/bool_norm.trs"));
    CHECK(trs.rules.size() == 6);
    std::map<std::string, int> expected{
        {"*", 2}, {"+", 2}, {"-", 1}, {"ge", 2}, {"gt", 2}};
    CHECK(trs.signature == expected);
    CHECK(to_string(trs.rules[0].lhs) == "-(gt(A,B))");
    CHECK(to_string(trs.rules[0].rhs) == "ge(B,A)");
    CHECK(to_string(trs.rules[4].lhs) == "*(A,+(B,C))");

    // Parse–print–parse is a fixpoint.
    Trs reparsed = parse_trs(to_string(trs));
    CHECK(reparsed.signature == trs.signature);
    REQUIRE(reparsed.rules.size() == trs.rules.size());
    for (size_t i = 0; i < trs.rules.size(); ++i) {
        CHECK(to_string(reparsed.rules[i].lhs) == to_string(trs.rules[i].lhs));
        CHECK(to_string(reparsed.rules[i].rhs) == to_string(trs.rules[i].rhs));
    }
}

TEST_CASE("parsing the bundled idiv system") {
    Trs trs = parse_trs(read_file(std::string(LPOSAT_DATA_DIR) + "/idiv.trs"));
    CHECK(trs.rules.size() == 3);
    std::map<std::string, int> expected{{"div", 2}, {"e", 0}, {"i", 1}};
    CHECK(trs.signature == expected);
    CHECK(to_string(trs.rules[2].rhs) == "div(Y,div(i(X),Z))");
}

TEST_CASE("nullary symbols and arrow lexing") {
    // No space around '->', and constants written bare.
    Trs trs = parse_trs("(VAR x)(RULES f(x)->x g(a)->a)");
    CHECK(trs.rules.size() == 2);
    CHECK(trs.signature ==
          std::map<std::string, int>{{"a", 0}, {"f", 1}, {"g", 1}});
}

TEST_CASE("COMMENT and other unknown sections are skipped") {
    Trs trs = parse_trs("(COMMENT free text, (nested parens) and -> arrows)\n"
                        "(VAR X)\n(RULES f(X) -> X)\n"
                        "(PROOF ignored too)\n");
    CHECK(trs.rules.size() == 1);
}

TEST_CASE("THEORY and STRATEGY raise UnsupportedSection") {
    std::string theory =
        read_file(std::string(LPOSAT_TEST_DATA_DIR) + "/with_theory.trs");
    CHECK_THROWS_AS(parse_trs(theory), UnsupportedSection);
    try {
        parse_trs(theory);
    } catch (const UnsupportedSection &e) {
        CHECK(e.section == "THEORY");
        CHECK(e.line == 2);
    }
    CHECK_THROWS_AS(parse_trs("(STRATEGY INNERMOST)(RULES f(a) -> a)"),
                    UnsupportedSection);
    // UnsupportedSection is a ParseError, so batch-style handlers can
    // distinguish it while generic handlers still catch it.
    CHECK_THROWS_AS(parse_trs(theory), ParseError);
}

TEST_CASE("right-hand side variables must be bound on the left") {
    std::string text =
        read_file(std::string(LPOSAT_TEST_DATA_DIR) + "/unbound_var.trs");
    CHECK_THROWS_WITH_AS(parse_trs(text),
                         doctest::Contains("C"), ParseError);
}

TEST_CASE("syntax errors carry positions") {
    std::string text =
        read_file(std::string(LPOSAT_TEST_DATA_DIR) + "/bad_syntax.trs");
    CHECK_THROWS_AS(parse_trs(text), ParseError);
    try {
        parse_trs(text);
    } catch (const UnsupportedSection &) {
        FAIL("syntax error misclassified as unsupported section");
    } catch (const ParseError &e) {
        CHECK(e.line == 3);
        CHECK(e.column > 0);
    }
}

TEST_CASE("structural errors") {
    CHECK_THROWS_AS(parse_trs("(RULES f(a) -> a)(VAR X)"), ParseError);
    CHECK_THROWS_AS(parse_trs("(RULES f(a) -> a)(RULES g(a) -> a)"),
                    ParseError);
    CHECK_THROWS_AS(parse_trs("(VAR X)"), ParseError); // RULES missing
    CHECK_THROWS_AS(parse_trs("(VAR X)(RULES X(a) -> a)"),
                    ParseError); // variable applied to arguments
    CHECK_THROWS_AS(parse_trs("(RULES f(a) -> a f(a,a) -> a)"),
                    ParseError); // arity clash
    CHECK_THROWS_AS(parse_trs("(COMMENT never closed"), ParseError);
    CHECK_THROWS_AS(parse_trs("(RULES f(a) -> a) ?"), ParseError);
}
