#include <doctest.h>

#include "mlk/oracle.hpp"
#include "mlk/cpl.hpp"

using namespace mlk;

TEST_CASE("truth-table oracle") {
    CHECK(is_tautology(parse_formula("p -> p")));
    CHECK(is_tautology(parse_formula("((p -> q) -> p) -> p")));
    CHECK(!is_tautology(parse_formula("p -> q")));
    auto v = falsifying_valuation(parse_formula("p -> q"));
    REQUIRE(v);
    CHECK(v->at("p"));
    CHECK(!v->at("q"));
    CHECK(!falsifying_valuation(parse_formula("p | ~p")));
}

TEST_CASE("interpret_statement is the standard reading") {
    CHECK(interpret_statement(parse_statement("+(p -> p)")));
    CHECK(!interpret_statement(parse_statement("+p")));
    CHECK(interpret_statement(parse_statement("-p")));
    CHECK(!interpret_statement(parse_statement("-(p -> p)")));
    CHECK(interpret_statement(parse_statement("+p => +q")));  // false => false
    CHECK(interpret_statement(parse_statement("TOP")));
    CHECK(!interpret_statement(parse_statement("BOT")));
}

TEST_CASE("matrix model self-checks and evaluates componentwise") {
    MatrixModel m2(2);
    CHECK(m2.top == 3u);
    std::map<std::string, uint32_t> v{{"p", 2u}, {"q", 1u}};
    CHECK(m2.eval(parse_formula("p | q"), v) == 3u);
    CHECK(m2.eval(parse_formula("p & q"), v) == 0u);
    CHECK(m2.eval(parse_formula("~p"), v) == 1u);
    CHECK(m2.designated(3u));
    CHECK(!m2.designated(2u));
    CHECK_THROWS(MatrixModel(0));
}

TEST_CASE("local validity of modus ponens, invalidity of its converse") {
    RuleForm mp;
    mp.premises = {parse_statement("+p"), parse_statement("+(p -> q)")};
    mp.conclusions = {parse_statement("+q")};
    CHECK(local_valid(mp, MatrixModel(1)));
    CHECK(local_valid(mp, MatrixModel(3)));

    RuleForm conv;
    conv.premises = {parse_statement("+q")};
    conv.conclusions = {parse_statement("+p")};
    std::map<std::string, uint32_t> w;
    CHECK(!local_valid(conv, MatrixModel(1), &w));
    CHECK(w.at("q") == 1u);  // first failing valuation in enumeration order
}

TEST_CASE("local_valid rejects signed rules") {
    RuleForm r;
    r.premises = {parse_statement("-p")};
    r.conclusions = {parse_statement("+p")};
    CHECK_THROWS_AS(local_valid(r, MatrixModel(1)), std::invalid_argument);
}

TEST_CASE("formula_universe is canonical and deduplicated") {
    auto u1 = formula_universe(1, 2);
    REQUIRE(u1.size() >= 2);
    CHECK(u1[0] == fvar("p"));
    CHECK(u1[1] == fvar("q"));
    auto u2 = formula_universe(1, 2);
    CHECK(u1 == u2);
    std::set<Frm> dedup(u1.begin(), u1.end());
    CHECK(dedup.size() == u1.size());
}

TEST_CASE("bounded admissibility: disjunction rule counterexample is canonical") {
    RuleForm disj;
    disj.premises = {parse_statement("+(A | B)")};
    disj.conclusions = {parse_statement("+A"), parse_statement("+B")};
    AdmissibleReport rep = check_admissible_bounded(disj, 1, 2);
    REQUIRE(!rep.admissible);
    CHECK(rep.counterexample.bindings.at("A") == fvar("p"));
    CHECK(rep.counterexample.bindings.at("B") == parse_formula("~p"));
}

TEST_CASE("contraposed modus ponens is bounded-admissible") {
    RuleForm mp;
    mp.premises = {parse_statement("+p"), parse_statement("+(p -> q)")};
    mp.conclusions = {parse_statement("+q")};
    RuleForm c = contrapose_rule(mp);
    CHECK(c.premises == std::set<Stm, AtomLess>{parse_statement("-q")});
    CHECK(c.conclusions ==
          std::set<Stm, AtomLess>{parse_statement("-p"), parse_statement("-(p -> q)")});
    CHECK(check_admissible_bounded(c, 2, 2).admissible);
}

TEST_CASE("rule (2) with a hereditary rejection premise is admissible") {
    RuleForm r2;
    r2.premises = {parse_statement("-A"), parse_statement("+(A | B)")};
    r2.conclusions = {parse_statement("+B")};
    CHECK(check_admissible_bounded(r2, 2, 2).admissible);
}

TEST_CASE("saturation audit: core clean, smiley-with-anti ambivalent") {
    AuditReport core = saturate_and_audit(lukasiewicz_core(), 5, 2);
    CHECK(core.clean());
    CHECK(core.asserted_count > 0);
    CHECK(core.rejected_count > 0);

    AuditReport bad = saturate_and_audit(smiley_with_anti(), 6, 2);
    CHECK(!bad.clean());
    bool ambivalent = false;
    for (auto& f : bad.findings) ambivalent = ambivalent || f.kind == "ambivalent";
    CHECK(ambivalent);

    AuditReport smi = saturate_and_audit(smiley_system(), 6, 2);
    CHECK(smi.clean());
}
