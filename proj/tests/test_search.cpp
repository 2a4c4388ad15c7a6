#include <doctest.h>

#include "mlk/search.hpp"

using namespace mlk;

TEST_CASE("search_proof: meta-axiom goals are one step") {
    Stm goal = meta_axiom_instance(
        "K5a", {{"a", parse_statement("+p")}, {"b", parse_statement("-q")}});
    auto d = search_proof(lukasiewicz_core(), {}, goal);
    REQUIRE(d);
    CHECK(d->steps.size() == 1);
    CHECK(d->conclusion() == goal);
}

TEST_CASE("search_proof: premise membership and axiom instances") {
    const DeductiveSystem& luk = lukasiewicz_core();
    Stm g = parse_statement("+(q -> q)");
    auto d1 = search_proof(luk, {g}, g);
    REQUIRE(d1);
    CHECK(d1->steps.size() == 1);
    CHECK(std::get_if<JPremise>(&d1->steps[0].just));

    // +((~q -> q) -> q) is an Sb instance of A2
    auto d2 = search_proof(luk, {}, parse_statement("+((~q -> q) -> q)"));
    REQUIRE(d2);
    CHECK(d2->steps.size() == 2);
}

TEST_CASE("search_proof finds the Table-1 refutation target") {
    const DeductiveSystem& luk = lukasiewicz_core();
    auto d = search_proof(luk, {}, parse_statement("-(~p)"));
    REQUIRE(d);
    CHECK(d->conclusion() == parse_statement("-(~p)"));
    CHECK(check_derivation(luk, *d, lemmas_for(luk)).accepted);
}

TEST_CASE("search_proof: underivable goals yield absence, not failure") {
    DeductiveSystem zero;
    zero.name = "zero-system";
    CHECK(!search_proof(zero, {}, parse_statement("+p")));
    CHECK(!search_proof(lukasiewicz_core(), {}, parse_statement("+p")));
}

TEST_CASE("search_proof respects the budget") {
    CHECK(!search_proof(lukasiewicz_core(), {}, parse_statement("-(~p)"), 10));
}

TEST_CASE("derivable_signed: identity sequent") {
    Stm a = parse_statement("+(p -> q)");
    auto d = derivable_signed(classical_extended(), {a}, {a});
    REQUIRE(d);
    CHECK(d->conclusion() == Statement::mimpl(a, a));
    CHECK(d->premises.empty());
}

TEST_CASE("derivable_signed: refutation goal with no premises") {
    auto d = derivable_signed(lukasiewicz_core(), {}, {parse_statement("-(~p)")});
    REQUIRE(d);
    CHECK(d->conclusion() == parse_statement("-(~p)"));
}

TEST_CASE("derivable_signed: disjunction rule sequent is one instance") {
    auto d = derivable_signed(with_disjunction_rule(),
                              {parse_statement("+(p | q)")},
                              {parse_statement("+p"), parse_statement("+q")});
    REQUIRE(d);
    CHECK(d->steps.size() == 1);
    CHECK(std::get_if<JRule>(&d->steps[0].just));
}

TEST_CASE("derivable_signed: rule back-chaining under premises") {
    // MT fires against the available parts: {-q, +(p -> q)} |- {-p}
    auto d = derivable_signed(lukasiewicz_core(),
                              {parse_statement("-q"), parse_statement("+(p -> q)")},
                              {parse_statement("-p")});
    REQUIRE(d);
    CHECK(d->conclusion() ==
          parse_statement("(-q AND +(p -> q)) => -p"));
}

TEST_CASE("derivable_signed: unreachable sequents are absent") {
    CHECK(!derivable_signed(lukasiewicz_core(), {parse_statement("+p")},
                            {parse_statement("+q")}));
}
