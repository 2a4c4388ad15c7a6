#include <doctest.h>

#include <random>

#include "mlk/consequence.hpp"

using namespace mlk;

static AtomUniverse small_universe() {
    return AtomUniverse({parse_statement("+p"), parse_statement("-p"),
                         parse_statement("+q")});
}

TEST_CASE("generate_relation satisfies (R), (M), (T)") {
    AtomUniverse u = small_universe();
    std::vector<SeedPair> seeds{{0u, 1u}, {2u, 4u}};
    RelationTable rel = generate_relation(seeds, u);
    CHECK(check_rmt(rel).empty());
    CHECK(rel.holds(0u, 1u));
    CHECK(rel.holds(2u, 4u));
}

TEST_CASE("check_rmt reports violations of each law") {
    AtomUniverse u = small_universe();
    RelationTable empty(u);
    auto v = check_rmt(empty);
    REQUIRE(!v.empty());
    CHECK(v[0].law == "R");  // overlap fails everywhere in the empty relation

    RelationTable bad = generate_relation({}, u);
    bad.remove(1u, 7u);  // break monotonicity above {+p} |- {+p}
    bool has_m = false;
    for (auto& x : check_rmt(bad, 64)) has_m = has_m || x.law == "M";
    CHECK(has_m);
}

TEST_CASE("meet of consequence relations is a consequence relation") {
    AtomUniverse u = small_universe();
    RelationTable a = generate_relation({{0u, 1u}}, u);
    RelationTable b = generate_relation({{0u, 2u}}, u);
    RelationTable m = meet_relation(a, b);
    CHECK(check_rmt(m).empty());
    CHECK(!m.holds(0u, 1u));  // only in a
    CHECK(!m.holds(0u, 2u));  // only in b
}

TEST_CASE("logic_of_relation / min_relation_for_logic round-trip") {
    AtomUniverse u = small_universe();
    std::mt19937 rng(7);
    for (int t = 0; t < 20; ++t) {
        LogicPair L;
        for (Stm a : u.atoms)
            if (rng() & 1) (a->sign ? L.asserted : L.rejected).insert(a->body);
        RelationTable rel = min_relation_for_logic(L, u);
        CHECK(check_rmt(rel).empty());
        CHECK(logic_of_relation(rel) == L);
    }
}

TEST_CASE("structural instance check") {
    // {+p} |- {+p} instantiates to {+(q -> q)} |- {+(q -> q)}
    AtomUniverse u(
        {parse_statement("+p"), parse_statement("+(q -> q)")});
    RelationTable rel = generate_relation({}, u);
    Substitution s({{"p", parse_formula("q -> q")}});
    CHECK(check_structural_instance(rel, {parse_statement("+p")},
                                    {parse_statement("+p")}, s));
}

TEST_CASE("classification flags") {
    std::set<Frm> universe{fvar("p"), fvar("q")};
    LogicPair standard{{fvar("p")}, {fvar("q")}};
    LogicClass c = classify(standard, universe);
    CHECK(c.coherent);
    CHECK(c.full);
    CHECK(c.standard);
    CHECK(!c.trivial);
    CHECK(!c.degenerate);

    LogicPair trivial{{fvar("p"), fvar("q")}, {fvar("p"), fvar("q")}};
    c = classify(trivial, universe);
    CHECK(c.trivial);
    CHECK(!c.coherent);

    c = classify(LogicPair{}, universe);
    CHECK(c.degenerate);
    CHECK(c.coherent);
    CHECK(!c.full);
}

TEST_CASE("universe caps are enforced") {
    std::vector<Stm> many;
    for (char v = 'a'; v <= 'i'; ++v)
        many.push_back(Statement::asserted(fvar(std::string(1, v))));
    CHECK_THROWS_AS(RelationTable(AtomUniverse(many)), ResourceError);
}
