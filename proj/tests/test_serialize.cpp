#include <doctest.h>

#include "mlk/serialize.hpp"
#include "mlk/cpl.hpp"

using namespace mlk;

TEST_CASE("justification print/parse round-trip") {
    for (const char* src :
         {"axiom A2", "premise", "mmp 3 1", "sb 2 {p:=q -> q}",
          "rs 7 {p:=p -> p, q:=~r}", "rule MP {X:=~(p -> p), Y:=p}",
          "lemma cpc.~(p -> p) -> p", "meta K1 {a:=+p, b:=-q}"}) {
        size_t i = 0;
        Justification j = parse_justification(src, i);
        CHECK(print_justification(j) == src);
    }
}

TEST_CASE("mld round-trip preserves checkability") {
    const DeductiveSystem& luk = lukasiewicz_core();
    Derivation d = refute(parse_formula("p -> q"), luk);
    std::string text = print_mld(luk.name, d);
    MldFile f = parse_mld(text);
    CHECK(f.system == luk.name);
    CHECK(check_derivation(luk, f.derivation, lemmas_for(luk)).accepted);
    CHECK(print_mld(luk.name, f.derivation) == text);
}

TEST_CASE("mld parse errors") {
    CHECK_THROWS_AS(parse_mld("1: +p premise"), ParseError);       // missing ';'
    CHECK_THROWS_AS(parse_mld("2: +p ; premise"), ParseError);     // bad numbering
    CHECK_THROWS_AS(parse_mld("1: +p ; frobnicate"), ParseError);  // unknown just
}

TEST_CASE("mlc round-trip for every built-in system") {
    for (const DeductiveSystem* ds :
         {&lukasiewicz_core(), &classical_extended(), &with_disjunction_rule(),
          &smiley_system(), &smiley_with_anti()}) {
        std::string text = print_mlc(*ds);
        DeductiveSystem back = parse_mlc(text);
        CHECK(back.name == ds->name);
        CHECK(back.allow_rs == ds->allow_rs);
        CHECK(back.axioms == ds->axioms);
        CHECK(back.rules == ds->rules);
        CHECK(print_mlc(back) == text);
    }
}

TEST_CASE("relation file round-trip") {
    std::string src =
        "universe { +p, -q }\n"
        "{} |- {+p}\n";
    RelationFile rf = parse_relation_file(src);
    RelationTable rel = generate_relation(rf.pairs, rf.universe);
    CHECK(rel.holds(0u, 1u));
    RelationFile back = parse_relation_file(print_relation_file(rel));
    CHECK(generate_relation(back.pairs, back.universe) == rel);
    CHECK_THROWS_AS(parse_relation_file("{+p} |- {+p}\n"), ParseError);
}

TEST_CASE("rule form file parsing") {
    RuleForm r = parse_rule_form("{+(A | B)} / {+A, +B}");
    CHECK(r.premises.size() == 1);
    CHECK(r.conclusions.size() == 2);
    CHECK(parse_rule_form("{} / {}").premises.empty());
    CHECK_THROWS_AS(parse_rule_form("{+p} {+q}"), ParseError);
}
