#include <doctest.h>

#include "mlk/cpl.hpp"

using namespace mlk;

TEST_CASE("built-in calculi are well-formed") {
    const DeductiveSystem& luk = lukasiewicz_core();
    CHECK(luk.axioms.size() == 4);  // A1, A2, A3, anti
    CHECK(luk.rules.size() == 2);   // MP, MT
    CHECK(luk.axiom("anti") == parse_statement("-p"));
    CHECK(luk.rule("MP") == parse_statement("(+X AND +(X -> Y)) => +Y"));
    CHECK(luk.rule("MT") == parse_statement("(-Y AND +(X -> Y)) => -X"));

    const DeductiveSystem& smi = smiley_system();
    CHECK(!smi.axiom("anti"));
    CHECK(!smi.allow_rs);
    CHECK(smi.rule("r1"));
    CHECK(smi.rule("r2"));
    CHECK(smiley_with_anti().axiom("anti"));
    CHECK(with_disjunction_rule().rule("DISJ"));
}

TEST_CASE("prove_tautology on core and extended signatures") {
    const DeductiveSystem& luk = lukasiewicz_core();
    const DeductiveSystem& ext = classical_extended();
    for (const char* src : {"p -> p", "~(p -> p) -> p", "((p -> q) -> p) -> p",
                            "~~p -> p", "p -> ~~p"}) {
        Derivation d = prove_tautology(parse_formula(src), luk);
        CHECK(d.conclusion() == Statement::asserted(parse_formula(src)));
    }
    for (const char* src : {"p | ~p", "(p & q) -> p", "(p <-> q) -> (q <-> p)",
                            "(p | q) <-> (q | p)"}) {
        Derivation d = prove_tautology(parse_formula(src), ext);
        CHECK(d.conclusion() == Statement::asserted(parse_formula(src)));
    }
}

TEST_CASE("prove_tautology refuses non-tautologies") {
    CHECK_THROWS_AS(prove_tautology(fvar("p"), lukasiewicz_core()), NotATautology);
}

TEST_CASE("core calculus refuses foreign connectives") {
    CHECK_THROWS_AS(prove_tautology(parse_formula("p | ~p"), lukasiewicz_core()),
                    SignatureError);
    CHECK_THROWS_AS(refute(parse_formula("p & q"), lukasiewicz_core()),
                    SignatureError);
}

TEST_CASE("refute matches the Table-1 shape for ~p") {
    Derivation d = refute(parse_formula("~p"), lukasiewicz_core());
    CHECK(d.conclusion() == parse_statement("-(~p)"));
    // uses the anti-axiom, finishes with RS
    bool uses_anti = false;
    for (auto& st : d.steps)
        if (auto* a = std::get_if<JAxiom>(&st.just)) uses_anti |= a->id == "anti";
    CHECK(uses_anti);
    CHECK(std::get_if<JRS>(&d.steps.back().just));
}

TEST_CASE("refute of a bare variable") {
    Derivation dp = refute(fvar("p"), lukasiewicz_core());
    CHECK(dp.steps.size() == 1);  // the anti-axiom itself
    Derivation dq = refute(fvar("q"), lukasiewicz_core());
    CHECK(dq.steps.size() == 2);  // anti-axiom + RS
    CHECK(dq.conclusion() == parse_statement("-q"));
}

TEST_CASE("decide agrees with the oracle on sample formulas") {
    const DeductiveSystem& luk = lukasiewicz_core();
    for (const char* src : {"p -> p", "~p", "p -> q", "(~p -> p) -> p",
                            "~(p -> q) -> p", "(p -> q) -> (q -> p)"}) {
        Frm f = parse_formula(src);
        Certificate c = decide(f, luk);
        CHECK(c.asserted == is_tautology(f));
        Verdict v = check_derivation(luk, c.derivation, lemmas_for(luk));
        CHECK(v.accepted);
    }
}

TEST_CASE("c_refute reproduces the C-derivation of ~p") {
    auto d = c_refute(parse_formula("~p"), lukasiewicz_core());
    REQUIRE(d);
    CHECK(d->premises == std::vector<Stm>{parse_statement("+(~p)")});
    CHECK(d->conclusion() == parse_statement("+p"));
}

TEST_CASE("c_refute of a tautology fails, of p is immediate") {
    CHECK(!c_refute(parse_formula("p -> p"), lukasiewicz_core()));
    auto d = c_refute(fvar("p"), lukasiewicz_core());
    REQUIRE(d);
    CHECK(d->steps.size() == 1);
}

TEST_CASE("smiley_trivialize derives -A for arbitrary A") {
    for (const char* src : {"q -> q", "p", "p & q", "~p"}) {
        Derivation d = smiley_trivialize(parse_formula(src));
        CHECK(d.conclusion() == Statement::rejected(parse_formula(src)));
        CHECK(check_derivation(smiley_with_anti(), d, lemmas_for(smiley_with_anti()))
                  .accepted);
    }
}

TEST_CASE("rk systems carry the pigeonhole rule") {
    const DeductiveSystem ds = rk_system(3);
    Stm r = ds.rule("RK");
    REQUIRE(r);
    CHECK(r->kind == SKind::MImpl);
    CHECK(r->a->kind == SKind::MTop);
    CHECK_THROWS(rk_rule_schema(1));
}
