#include <doctest.h>

#include "mlk/cpl.hpp"

using namespace mlk;

TEST_CASE("meta-axiom recognition and instantiation") {
    Stm a = parse_statement("-p");
    Stm b = parse_statement("+(q -> q)");
    Stm inst = Statement::mimpl(a, Statement::mimpl(b, a));
    auto hit = is_meta_axiom(inst);
    REQUIRE(hit);
    CHECK(hit->first == "K1");
    CHECK(meta_axiom_instance(hit->first, hit->second) == inst);
    CHECK(!is_meta_axiom(Statement::mimpl(a, b)));
}

TEST_CASE("checker accepts a hand-built derivation") {
    const DeductiveSystem& ds = lukasiewicz_core();
    Derivation d;
    d.steps.push_back({ds.axiom("A2"), JAxiom{"A2"}});
    Substitution s({{"p", parse_formula("q -> q")}});
    d.steps.push_back({subst_statement(s, ds.axiom("A2")), JSb{0, s}});
    CHECK(check_derivation(ds, d, LemmaStore{}).accepted);
}

TEST_CASE("checker rejects with precise reason codes") {
    const DeductiveSystem& ds = lukasiewicz_core();
    LemmaStore empty;
    auto fails = [&](Derivation d, const std::string& reason, size_t step) {
        Verdict v = check_derivation(ds, d, empty);
        CHECK(!v.accepted);
        CHECK(v.reason == reason);
        CHECK(v.step == step);
    };
    Substitution s({{"p", fvar("q")}});

    Derivation d1;  // Sb on the negative anti-axiom
    d1.steps.push_back({ds.axiom("anti"), JAxiom{"anti"}});
    d1.steps.push_back({parse_statement("-q"), JSb{0, s}});
    fails(d1, "sb-on-negative", 1);

    Derivation d2;  // RS concluding a positive statement
    d2.steps.push_back({ds.axiom("A2"), JAxiom{"A2"}});
    d2.steps.push_back({parse_statement("+p"), JRS{0, Substitution{}}});
    fails(d2, "rs-on-positive", 1);

    Derivation d3;  // forward reference
    d3.steps.push_back({parse_statement("-q"), JSb{3, s}});
    fails(d3, "dangling-reference", 0);

    Derivation d4;  // rule instance does not match the claimed statement
    d4.steps.push_back({parse_statement("+p => +q"),
                        JRule{"MP", Substitution({{"X", fvar("p")}, {"Y", fvar("q")}})}});
    fails(d4, "bad-instance", 0);

    Derivation d5;  // premise not declared
    d5.steps.push_back({parse_statement("+p"), JPremise{}});
    fails(d5, "bad-premise", 0);

    Derivation d6;  // unknown lemma
    d6.steps.push_back({parse_statement("+p"), JLemma{"nope"}});
    fails(d6, "unknown-lemma", 0);
}

TEST_CASE("RS can be disabled per system") {
    DeductiveSystem ds = lukasiewicz_core();
    ds.allow_rs = false;
    Derivation d;
    d.steps.push_back({ds.axiom("anti"), JAxiom{"anti"}});
    d.steps.push_back(
        {parse_statement("-p"), JRS{0, Substitution({{"p", fvar("p")}})}});
    CHECK(check_derivation(ds, d, LemmaStore{}).reason == "rs-disabled");
}

TEST_CASE("apply_rule_macro reproduces the worked MP shape") {
    const DeductiveSystem& ds = lukasiewicz_core();
    LemmaStore store;
    ProofBuilder b(ds, store);
    size_t a2 = b.axiom("A2");  // +((~p -> p) -> p)
    size_t a3 = b.axiom("A3");  // +(p -> (~p -> q))
    size_t maj = b.sb(a3, Substitution({{"p", parse_formula("(~p -> p) -> p")},
                                        {"q", fvar("q")}}));
    Frm x = parse_formula("(~p -> p) -> p");
    size_t out = apply_rule_macro(
        ds, b.d, "MP",
        Substitution({{"X", x}, {"Y", fimp(fneg(x), fvar("q"))}}), {a2, maj});
    CHECK(b.stm_at(out) == Statement::asserted(fimp(fneg(x), fvar("q"))));
    CHECK(check_derivation(ds, b.d, store).accepted);
    // three lead-in steps (A2, A3, Sb) plus the 5-step macro: K3 instance,
    // two conjunction MMPs, the rule instance, and the final MMP
    CHECK(b.d.steps.size() == 8);
}

TEST_CASE("single-premise rule macro is two steps") {
    const DeductiveSystem& ds = smiley_with_anti();
    LemmaStore store;
    ProofBuilder b(ds, store);
    size_t anti = b.axiom("anti");
    size_t out =
        apply_rule_macro(ds, b.d, "r1", Substitution({{"X", fvar("p")}}), {anti});
    CHECK(b.stm_at(out) == parse_statement("+(~p)"));
    CHECK(b.d.steps.size() == 3);  // anti, rule instance, MMP
    CHECK(check_derivation(ds, b.d, store).accepted);
}

TEST_CASE("lemma store certify/find") {
    const DeductiveSystem& ds = lukasiewicz_core();
    LemmaStore store;
    Derivation d;
    d.steps.push_back({ds.axiom("A2"), JAxiom{"A2"}});
    store.certify("a2.copy", ds, d);
    REQUIRE(store.find("a2.copy"));
    CHECK(store.find("a2.copy")->stm == ds.axiom("A2"));

    Derivation bad;
    bad.steps.push_back({parse_statement("+p"), JAxiom{"A2"}});
    CHECK_THROWS(store.certify("bad", ds, bad));
}
