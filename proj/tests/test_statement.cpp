#include <doctest.h>

#include "mlk/statement.hpp"

using namespace mlk;

TEST_CASE("statement parse/print round-trip") {
    for (const char* src : {"+p", "-p", "+(p -> q)", "TOP", "BOT",
                            "+p AND -q", "+p OR -q => BOT", "NOT +p",
                            "(+X AND +(X -> Y)) => +Y",
                            "(-Y AND +(X -> Y)) => -X"}) {
        Stm s = parse_statement(src);
        CHECK(parse_statement(print_statement(s)) == s);
    }
}

TEST_CASE("statement connective precedence") {
    // NOT binds tightest, then AND, OR, and => (right-assoc, loosest)
    CHECK(parse_statement("+p AND -q OR +r") ==
          Statement::mor(Statement::mand(parse_statement("+p"), parse_statement("-q")),
                         parse_statement("+r")));
    CHECK(parse_statement("+p => -q => +r") ==
          Statement::mimpl(parse_statement("+p"),
                           Statement::mimpl(parse_statement("-q"), parse_statement("+r"))));
    CHECK(parse_statement("NOT +p AND -q") ==
          Statement::mand(Statement::mneg(parse_statement("+p")), parse_statement("-q")));
}

TEST_CASE("substitution acts on formula bodies only") {
    Stm s = parse_statement("+p => -(p -> q)");
    Substitution sub({{"p", parse_formula("~r")}});
    CHECK(subst_statement(sub, s) == parse_statement("+(~r) => -(~r -> q)"));
}

TEST_CASE("polarity") {
    CHECK(polarity(parse_statement("+p")) == Polarity::Positive);
    CHECK(polarity(parse_statement("-p")) == Polarity::Negative);
}

TEST_CASE("to_rule_form produces atomic clauses equivalent to the input") {
    Stm s = parse_statement("NOT(+A AND -B) OR +C");
    std::vector<RuleForm> clauses = to_rule_form(s);
    REQUIRE(clauses.size() == 1);
    CHECK(print_rule_form(clauses[0]) == "{+A, -B} / {+C}");

    // equivalence over all assignments to the atoms
    std::set<Stm> atoms;
    collect_atoms(s, atoms);
    std::vector<Stm> as(atoms.begin(), atoms.end());
    for (size_t bits = 0; bits < (size_t{1} << as.size()); ++bits) {
        std::map<Stm, bool> v;
        for (size_t i = 0; i < as.size(); ++i) v[as[i]] = (bits >> i) & 1;
        bool clause_val = true;
        for (auto& c : clauses) {
            bool prem = true, conc = false;
            for (Stm a : c.premises) prem = prem && v.at(a);
            for (Stm a : c.conclusions) conc = conc || v.at(a);
            clause_val = clause_val && (!prem || conc);
        }
        CHECK(clause_val == meta_eval(s, v));
    }
}

TEST_CASE("to_rule_form on constants") {
    CHECK(to_rule_form(parse_statement("TOP")).empty());
    auto bot = to_rule_form(parse_statement("BOT"));
    REQUIRE(bot.size() == 1);
    CHECK(bot[0].premises.empty());
    CHECK(bot[0].conclusions.empty());
}

TEST_CASE("meta_eval of the meta connectives") {
    Stm s = parse_statement("+p => -q");
    std::map<Stm, bool> v{{parse_statement("+p"), true}, {parse_statement("-q"), false}};
    CHECK(!meta_eval(s, v));
    v[parse_statement("-q")] = true;
    CHECK(meta_eval(s, v));
}
