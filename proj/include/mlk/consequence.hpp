#pragma once

// Finite-universe engine for consequence relations on sets of atomic
// statements: saturation under overlap (R), monotonicity (M) and cut (T),
// law checking, structurality instances, and the bridges between relations
// and logics (asserted/rejected pairs).
//
// Sets of atoms are bitmasks over the universe; the engine is deliberately
// exponential and capped (default 8 atoms).

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "statement.hpp"

namespace mlk {

struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using AtomSet = uint32_t;  // bitmask over universe indices

struct AtomUniverse {
    std::vector<Stm> atoms;  // each an atomic statement, no duplicates

    explicit AtomUniverse(std::vector<Stm> as = {}) : atoms(std::move(as)) {
        std::set<Stm> seen;
        for (Stm a : atoms) {
            if (!a->is_atom())
                throw std::invalid_argument("universe members must be atomic statements");
            if (!seen.insert(a).second)
                throw std::invalid_argument("duplicate atom in universe");
        }
    }

    size_t size() const { return atoms.size(); }
    std::optional<size_t> index_of(Stm a) const {
        for (size_t i = 0; i < atoms.size(); ++i)
            if (atoms[i] == a) return i;
        return std::nullopt;
    }
    AtomSet full_mask() const { return (AtomSet)((1u << atoms.size()) - 1); }

    AtomSet mask_of(const std::vector<Stm>& as) const {
        AtomSet m = 0;
        for (Stm a : as) {
            auto i = index_of(a);
            if (!i) throw std::invalid_argument("atom not in universe: " + print_statement(a));
            m |= 1u << *i;
        }
        return m;
    }
};

// A binary relation on subsets of the universe, stored as a dense bitmap
// indexed by (premise-mask, conclusion-mask).
class RelationTable {
public:
    AtomUniverse universe;
    std::vector<bool> rel;  // size 2^n * 2^n

    explicit RelationTable(AtomUniverse u) : universe(std::move(u)) {
        size_t n = universe.size();
        if (n > 8) throw ResourceError("universe cap exceeded (max 8 atoms)");
        rel.assign((size_t)1 << (2 * n), false);
    }

    size_t n_sets() const { return (size_t)1 << universe.size(); }
    bool holds(AtomSet g, AtomSet d) const { return rel[(size_t)g * n_sets() + d]; }
    void add(AtomSet g, AtomSet d) { rel[(size_t)g * n_sets() + d] = true; }
    void remove(AtomSet g, AtomSet d) { rel[(size_t)g * n_sets() + d] = false; }

    size_t pair_count() const {
        size_t c = 0;
        for (bool b : rel) c += b;
        return c;
    }
    bool operator==(const RelationTable& o) const {
        return universe.atoms == o.universe.atoms && rel == o.rel;
    }
};

// ---------------------------------------------------------------------------
// Law checking

struct RmtViolation {
    std::string law;  // "R", "M" or "T"
    AtomSet gamma, delta;
    size_t atom = 0;          // cut atom for (T)
    AtomSet gamma2 = 0, delta2 = 0;  // superset pair for (M)
};

// Enumerates violations of (R) overlap, (M) monotonicity, (T) cut over the
// whole finite universe. Empty result iff rel is a consequence relation.
inline std::vector<RmtViolation> check_rmt(const RelationTable& rel, size_t max_report = 16) {
    std::vector<RmtViolation> out;
    size_t N = rel.n_sets();
    // (R): Gamma meets Delta -> Gamma |- Delta
    for (AtomSet g = 0; g < N && out.size() < max_report; ++g)
        for (AtomSet d = 0; d < N && out.size() < max_report; ++d)
            if ((g & d) && !rel.holds(g, d)) out.push_back({"R", g, d});
    // (M): Gamma |- Delta and supersets Gamma' >= Gamma, Delta' >= Delta
    for (AtomSet g = 0; g < N && out.size() < max_report; ++g)
        for (AtomSet d = 0; d < N && out.size() < max_report; ++d) {
            if (!rel.holds(g, d)) continue;
            for (AtomSet g2 = 0; g2 < N && out.size() < max_report; ++g2) {
                if ((g2 & g) != g) continue;
                for (AtomSet d2 = 0; d2 < N && out.size() < max_report; ++d2) {
                    if ((d2 & d) != d) continue;
                    if (!rel.holds(g2, d2)) {
                        RmtViolation v{"M", g, d};
                        v.gamma2 = g2;
                        v.delta2 = d2;
                        out.push_back(v);
                    }
                }
            }
        }
    // (T) cut: Gamma |- Delta,a and Gamma,a |- Delta imply Gamma |- Delta
    size_t n = rel.universe.size();
    for (AtomSet g = 0; g < N && out.size() < max_report; ++g)
        for (AtomSet d = 0; d < N && out.size() < max_report; ++d) {
            if (rel.holds(g, d)) continue;
            for (size_t i = 0; i < n; ++i) {
                AtomSet a = 1u << i;
                if (rel.holds(g, d | a) && rel.holds(g | a, d)) {
                    RmtViolation v{"T", g, d};
                    v.atom = i;
                    out.push_back(v);
                    break;
                }
            }
        }
    return out;
}

// ---------------------------------------------------------------------------
// Least consequence relation containing the seeds

struct SeedPair {
    AtomSet gamma, delta;
};

inline RelationTable generate_relation(const std::vector<SeedPair>& seeds,
                                       const AtomUniverse& universe) {
    RelationTable t(universe);
    size_t N = t.n_sets();
    // (R) base and seeds
    for (AtomSet g = 0; g < N; ++g)
        for (AtomSet d = 0; d < N; ++d)
            if (g & d) t.add(g, d);
    for (auto& s : seeds) {
        if ((s.gamma | s.delta) & ~universe.full_mask())
            throw std::invalid_argument("seed pair outside universe");
        t.add(s.gamma, s.delta);
    }
    // saturate under (M) and (T)
    size_t n = universe.size();
    bool changed = true;
    while (changed) {
        changed = false;
        for (AtomSet g = 0; g < N; ++g)
            for (AtomSet d = 0; d < N; ++d) {
                if (!t.holds(g, d)) continue;
                for (AtomSet g2 = g; ; g2 = (g2 + 1) | g) {
                    for (AtomSet d2 = d; ; d2 = (d2 + 1) | d) {
                        if (!t.holds(g2, d2)) {
                            t.add(g2, d2);
                            changed = true;
                        }
                        if (d2 == universe.full_mask()) break;
                    }
                    if (g2 == universe.full_mask()) break;
                }
            }
        for (AtomSet g = 0; g < N; ++g)
            for (AtomSet d = 0; d < N; ++d) {
                if (t.holds(g, d)) continue;
                for (size_t i = 0; i < n; ++i) {
                    AtomSet a = 1u << i;
                    if (t.holds(g, d | a) && t.holds(g | a, d)) {
                        t.add(g, d);
                        changed = true;
                        break;
                    }
                }
            }
    }
    return t;
}

// Meet (intersection) of two relations over the same universe.
inline RelationTable meet_relation(const RelationTable& x, const RelationTable& y) {
    if (x.universe.atoms != y.universe.atoms)
        throw std::invalid_argument("meet: universes differ");
    RelationTable t(x.universe);
    for (size_t i = 0; i < t.rel.size(); ++i) t.rel[i] = x.rel[i] && y.rel[i];
    return t;
}

// ---------------------------------------------------------------------------
// Structurality (per-substitution instance check)

// For all-positive Gamma, Delta: Gamma |- Delta must entail s(Gamma) |- s(Delta).
// For all-negative: s(Gamma) |- s(Delta) must entail Gamma |- Delta.
// Mixed-polarity sets are rejected.
inline bool check_structural_instance(const RelationTable& rel,
                                      const std::vector<Stm>& gamma,
                                      const std::vector<Stm>& delta,
                                      const Substitution& s) {
    bool all_pos = true, all_neg = true;
    for (Stm a : gamma) {
        if (!a->is_atom()) throw std::invalid_argument("non-atomic member");
        (a->sign ? all_neg : all_pos) = false;
    }
    for (Stm a : delta) {
        if (!a->is_atom()) throw std::invalid_argument("non-atomic member");
        (a->sign ? all_neg : all_pos) = false;
    }
    if (!all_pos && !all_neg)
        throw std::invalid_argument(
            "structurality is defined only for all-positive or all-negative sets");

    std::vector<Stm> sg, sd;
    for (Stm a : gamma) sg.push_back(subst_statement(s, a));
    for (Stm a : delta) sd.push_back(subst_statement(s, a));
    AtomSet g = rel.universe.mask_of(gamma), d = rel.universe.mask_of(delta);
    AtomSet g2 = rel.universe.mask_of(sg), d2 = rel.universe.mask_of(sd);
    if (all_pos) return !rel.holds(g, d) || rel.holds(g2, d2);
    return !rel.holds(g2, d2) || rel.holds(g, d);
}

// ---------------------------------------------------------------------------
// Logics as pairs and the relation bridges

struct LogicPair {
    std::set<Frm> asserted;
    std::set<Frm> rejected;

    bool operator==(const LogicPair& o) const {
        return asserted == o.asserted && rejected == o.rejected;
    }
};

// asserted = {A : |- +A}, rejected = {A : |- -A} (empty premises, singleton
// conclusion), restricted to the universe.
inline LogicPair logic_of_relation(const RelationTable& rel) {
    LogicPair L;
    for (size_t i = 0; i < rel.universe.size(); ++i) {
        if (!rel.holds(0, 1u << i)) continue;
        Stm a = rel.universe.atoms[i];
        (a->sign ? L.asserted : L.rejected).insert(a->body);
    }
    return L;
}

// The minimal consequence relation of a logic: Gamma |- Delta iff Delta meets
// Gamma together with the statement axioms {+A : A asserted} u {-A : A rejected}.
inline RelationTable min_relation_for_logic(const LogicPair& L, const AtomUniverse& universe) {
    RelationTable t(universe);
    AtomSet ax = 0;
    for (size_t i = 0; i < universe.size(); ++i) {
        Stm a = universe.atoms[i];
        bool in = a->sign ? L.asserted.count(a->body) : L.rejected.count(a->body);
        if (in) ax |= 1u << i;
    }
    size_t N = t.n_sets();
    for (AtomSet g = 0; g < N; ++g)
        for (AtomSet d = 0; d < N; ++d)
            if (d & (g | ax)) t.add(g, d);
    return t;
}

// ---------------------------------------------------------------------------
// Classification over a finite formula universe

struct LogicClass {
    bool coherent = false;   // asserted and rejected disjoint
    bool full = false;       // asserted u rejected covers the universe
    bool standard = false;   // coherent and full
    bool trivial = false;    // both parts cover the universe
    bool degenerate = false; // both parts empty
};

inline LogicClass classify(const LogicPair& L, const std::set<Frm>& universe) {
    LogicClass c;
    c.coherent = true;
    for (Frm a : L.asserted)
        if (L.rejected.count(a)) c.coherent = false;
    c.full = true;
    for (Frm a : universe)
        if (!L.asserted.count(a) && !L.rejected.count(a)) c.full = false;
    c.standard = c.coherent && c.full;
    c.trivial = true;
    for (Frm a : universe)
        if (!L.asserted.count(a) || !L.rejected.count(a)) c.trivial = false;
    c.degenerate = L.asserted.empty() && L.rejected.empty();
    return c;
}

}  // namespace mlk
