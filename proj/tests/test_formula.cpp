#include <doctest.h>

#include "mlk/formula.hpp"

using namespace mlk;

TEST_CASE("formula parse/print round-trip") {
    for (const char* src : {"p", "~p", "p -> q", "p -> q -> r", "(p -> q) -> r",
                            "~(p -> q)", "p & q | r", "p <-> ~q", "~~~p",
                            "(p | q) & ~(r <-> s)"}) {
        Frm f = parse_formula(src);
        CHECK(parse_formula(print_formula(f)) == f);
    }
}

TEST_CASE("parser precedence and associativity") {
    CHECK(parse_formula("p -> q -> r") == parse_formula("p -> (q -> r)"));
    CHECK(parse_formula("p & q | r") == parse_formula("(p & q) | r"));
    CHECK(parse_formula("~p & q") == parse_formula("(~p) & q"));
    CHECK(parse_formula("p -> q") != parse_formula("(p -> q) -> q"));
}

TEST_CASE("parse errors carry a position") {
    CHECK_THROWS_AS(parse_formula("p ->"), ParseError);
    CHECK_THROWS_AS(parse_formula("(p -> q"), ParseError);
    CHECK_THROWS_AS(parse_formula(""), ParseError);
    try {
        parse_formula("p -> )");
    } catch (const ParseError& e) {
        CHECK(e.pos == 5);
    }
}

TEST_CASE("interning makes structural equality pointer equality") {
    CHECK(fimp(fvar("p"), fvar("q")) == parse_formula("p -> q"));
    CHECK(fneg(fneg(fvar("p"))) == parse_formula("~~p"));
}

TEST_CASE("substitution composition and identity") {
    Frm f = parse_formula("p -> ~q");
    Substitution id;
    CHECK(apply_subst(id, f) == f);
    Substitution s({{"p", parse_formula("q -> q")}, {"q", fvar("p")}});
    CHECK(apply_subst(s, f) == parse_formula("(q -> q) -> ~p"));
}

TEST_CASE("matching recovers the substitution") {
    Frm pattern = parse_formula("p -> (q -> p)");
    Frm target = parse_formula("~r -> ((s & s) -> ~r)");
    auto m = match_formula(pattern, target);
    REQUIRE(m);
    CHECK(apply_subst(*m, pattern) == target);
    // conflicting occurrences do not match
    CHECK(!match_formula(pattern, parse_formula("p -> (q -> q)")));
}

TEST_CASE("well_formed respects the signature") {
    CHECK(well_formed(parse_formula("~p -> q"), arrow_neg_signature()));
    CHECK(!well_formed(parse_formula("p & q"), arrow_neg_signature()));
    CHECK(well_formed(parse_formula("p & q"), default_signature()));
}

TEST_CASE("vars_of collects distinct variables") {
    auto vs = vars_of(parse_formula("p -> (q -> p) -> ~r"));
    CHECK(vs == std::set<std::string>{"p", "q", "r"});
}
