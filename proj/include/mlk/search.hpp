#pragma once

// Bounded, deterministic proof search over statements.
//
//  * search_proof — tries a fixed strategy list (premise membership, system
//    axiom, axiom + Sb, meta-axiom instance, rule-schema instance, the
//    built-in decision procedure for atomic goals, and the signed-sequent
//    search below for implication/disjunction goals). Absence of a proof is
//    reported as nullopt, never as an error.
//  * derivable_signed — searches for (conj premises) => (disj conclusions)
//    over atomic statements. The meta-level reasoning is compiled through
//    the K1..K8 meta-axioms: the premise conjunction is assumed once, taken
//    apart with K4a/K4b, rules are back-chained one level deep against the
//    available parts, and the chosen conclusion is injected into the
//    disjunction with K5a/K5b.
//
// Every returned derivation re-checks against the same system and lemma
// store used to build it.

#include <optional>
#include <vector>

#include "cpl.hpp"

namespace mlk {

namespace detail {

// Matches a rule-schema statement against a concrete statement, extending
// bind (formula metavariables are uppercase, as in rule schemata).
inline bool match_stm_schema(Stm schema, Stm target, Substitution& bind) {
    if (schema->kind != target->kind) return false;
    switch (schema->kind) {
        case SKind::Atom:
            return schema->sign == target->sign &&
                   merge_match(schema->body, target->body, bind);
        case SKind::MTop:
        case SKind::MBot:
            return true;
        case SKind::MNeg:
            return match_stm_schema(schema->a, target->a, bind);
        default:
            return match_stm_schema(schema->a, target->a, bind) &&
                   match_stm_schema(schema->b, target->b, bind);
    }
}

// Appends a finished derivation into a builder, remapping step references.
inline size_t splice_derivation(ProofBuilder& b, const Derivation& src) {
    std::vector<size_t> remap(src.steps.size());
    for (size_t i = 0; i < src.steps.size(); ++i) {
        const Step& st = src.steps[i];
        if (auto* s = std::get_if<JSb>(&st.just)) {
            remap[i] = b.add(st.stm, JSb{remap[s->ref], s->s});
        } else if (auto* r = std::get_if<JRS>(&st.just)) {
            remap[i] = b.add(st.stm, JRS{remap[r->ref], r->s});
        } else if (auto* m = std::get_if<JMMP>(&st.just)) {
            remap[i] = b.add(st.stm, JMMP{remap[m->major], remap[m->minor]});
        } else if (std::get_if<JPremise>(&st.just)) {
            remap[i] = b.premise(st.stm);
        } else {
            remap[i] = b.add(st.stm, st.just);
        }
    }
    return remap.back();
}

// True when the system carries the machinery the certificate generators
// need (an implication fragment with MP and the anti-axiom).
inline bool has_decision_procedure(const DeductiveSystem& ds) {
    return ds.rule("MP") && ds.axiom("anti") && (ds.axiom("A1") || ds.axiom("k1"));
}

// One-step strategies for a goal with no premises: exact axiom, axiom + Sb,
// meta-axiom instance, rule-schema instance, and — for atomic goals in a
// system with a decision procedure — a spliced certificate.
inline std::optional<size_t> derive_closed(ProofBuilder& b, Stm goal) {
    for (auto& [id, ax] : b.ds.axioms) {
        if (ax == goal) return b.axiom(id);
        if (ax->is_atom() && ax->sign && goal->is_atom() && goal->sign) {
            if (auto s = match_formula(ax->body, goal->body)) return b.axiom_sb(id, *s);
        }
    }
    if (auto ma = is_meta_axiom(goal)) return b.meta(ma->first, ma->second);
    for (auto& [id, schema] : b.ds.rules) {
        Substitution bind;
        if (match_stm_schema(schema, goal, bind))
            return b.add(goal, JRule{id, bind});
    }
    if (goal->is_atom() && has_decision_procedure(b.ds) &&
        well_formed(goal->body, b.ds.signature)) {
        bool taut = is_tautology(goal->body);
        try {
            if (goal->sign && taut)
                return splice_derivation(b, prove_tautology(goal->body, b.ds));
            if (!goal->sign && !taut && b.ds.allow_rs)
                return splice_derivation(b, refute(goal->body, b.ds));
        } catch (const SignatureError&) {
        } catch (const ResourceError&) {
        }
    }
    return std::nullopt;
}

// Reasoning under a single assumed statement C: every node is a proved step
// of the shape C => x. Lifting, detachment and conjunction introduction go
// through K1, K2 and K3.
class UnderHyp {
public:
    UnderHyp(ProofBuilder& builder, Stm hyp) : b(builder), C(hyp) {
        remember(C, b.self_mimpl(C));
        decompose(C);
    }

    // C => s from a closed step proving s (K1 + MMP)
    size_t lift(size_t closed) {
        Stm s = b.stm_at(closed);
        size_t k1 = b.meta("K1", MetaBinding{{"a", s}, {"b", C}});
        return remember(s, b.mmp(k1, closed));
    }
    // C => y from C => x and C => (x => y) (K2 + 2 MMPs)
    size_t mp(size_t cxy, size_t cx) {
        Stm x = b.stm_at(cx)->b;
        Stm y = b.stm_at(cxy)->b->b;
        size_t k2 = b.meta("K2", MetaBinding{{"a", C}, {"b", x}, {"c", y}});
        return remember(y, b.mmp(b.mmp(k2, cx), cxy));
    }
    // C => y from C => x and a closed step proving x => y
    size_t compose(size_t cx, size_t closed_xy) { return mp(lift(closed_xy), cx); }
    // C => (x AND y) from C => x and C => y (K3)
    size_t conj(size_t cx, size_t cy) {
        Stm x = b.stm_at(cx)->b;
        Stm y = b.stm_at(cy)->b;
        size_t k3 = b.meta("K3", MetaBinding{{"a", x}, {"b", y}});
        return mp(compose(cx, k3), cy);
    }

    std::optional<size_t> find(Stm s) const {
        for (auto& [stm, step] : have)
            if (stm == s) return step;
        return std::nullopt;
    }
    // insertion-ordered, for deterministic back-chaining
    std::vector<std::pair<Stm, size_t>> have;

    ProofBuilder& b;
    Stm C;

private:
    size_t remember(Stm s, size_t step) {
        if (!find(s)) have.push_back({s, step});
        return step;
    }
    // take the hypothesis conjunction apart with K4a/K4b
    void decompose(Stm s) {
        if (s->kind != SKind::MAnd) return;
        size_t cs = *find(s);
        size_t a = compose(cs, b.meta("K4a", MetaBinding{{"a", s->a}, {"b", s->b}}));
        size_t bb = compose(cs, b.meta("K4b", MetaBinding{{"a", s->a}, {"b", s->b}}));
        (void)a;
        (void)bb;
        decompose(s->a);
        decompose(s->b);
    }
};

inline Stm fold_mand(const std::vector<Stm>& xs) {
    Stm acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = Statement::mand(acc, xs[i]);
    return acc;
}
inline Stm fold_mor(const std::vector<Stm>& xs) {
    Stm acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = Statement::mor(acc, xs[i]);
    return acc;
}

// Back-chains one rule application: finds a rule whose (atomic-part)
// conclusion matches the goal and whose premise parts all match statements
// already available under the hypothesis. Deterministic: rules in system
// order, candidates in derivation order.
inline std::optional<size_t> back_chain(UnderHyp& u, Stm goal) {
    for (auto& [id, schema] : u.b.ds.rules) {
        if (schema->kind != SKind::MImpl || !schema->b->is_atom()) continue;
        Substitution bind0;
        if (!match_stm_schema(schema->b, goal, bind0)) continue;
        std::vector<Stm> parts;
        detail::split_conj(schema->a, parts);
        // assign each schema part to an available statement, backtracking
        std::vector<size_t> chosen(parts.size());
        size_t pool = u.have.size();  // steps added at the leaf must not be candidates
        std::function<bool(size_t, Substitution)> assign =
            [&](size_t i, Substitution bind) -> bool {
            if (i == parts.size()) {
                Stm inst = subst_statement(bind, schema);
                size_t rule_step = u.b.add(inst, JRule{id, bind});
                size_t conj_step = chosen[0];
                for (size_t j = 1; j < chosen.size(); ++j)
                    conj_step = u.conj(conj_step, chosen[j]);
                u.mp(u.lift(rule_step), conj_step);
                return true;
            }
            for (size_t c = 0; c < pool; ++c) {
                auto [stm, step] = u.have[c];
                Substitution ext = bind;
                if (!match_stm_schema(parts[i], stm, ext)) continue;
                chosen[i] = step;
                if (assign(i + 1, ext)) return true;
            }
            return false;
        };
        if (assign(0, bind0)) return *u.find(goal);
    }
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// derivable_signed

// Searches for a certificate of (conj premises) => (disj conclusions) over
// atomic statements; empty premise list degenerates to the bare disjunction.
inline std::optional<Derivation> derivable_signed(const DeductiveSystem& ds,
                                                  const std::vector<Stm>& premises,
                                                  const std::vector<Stm>& conclusions,
                                                  size_t budget = 10000) {
    if (conclusions.empty())
        throw std::invalid_argument("derivable_signed needs at least one conclusion");
    for (Stm s : premises)
        if (!s->is_atom()) throw std::invalid_argument("premises must be atomic");
    for (Stm s : conclusions)
        if (!s->is_atom()) throw std::invalid_argument("conclusions must be atomic");

    const LemmaStore& store = lemmas_for(ds);
    ProofBuilder b(ds, store);
    Stm D = detail::fold_mor(conclusions);
    // running left folds of the conclusion disjunction, for K5 injection
    std::vector<Stm> folds(conclusions.size());
    for (size_t i = 0; i < conclusions.size(); ++i)
        folds[i] = i ? Statement::mor(folds[i - 1], conclusions[i]) : conclusions[i];

    auto done = [&](Stm want) -> std::optional<Derivation> {
        if (b.d.steps.empty() || b.d.steps.back().stm != want) return std::nullopt;
        if (b.d.steps.size() > budget) return std::nullopt;
        Verdict v = check_derivation(ds, b.d, store);
        if (!v.accepted)
            throw std::logic_error("internal: search certificate failed at step " +
                                   std::to_string(v.step) + " (" + v.reason + ")");
        return b.d;
    };

    if (premises.empty()) {
        for (size_t k = 0; k < conclusions.size(); ++k) {
            auto got = detail::derive_closed(b, conclusions[k]);
            if (!got) continue;
            size_t cur = *got;
            if (k > 0) {
                size_t k5 = b.meta(
                    "K5b", MetaBinding{{"a", folds[k - 1]}, {"b", conclusions[k]}});
                cur = b.mmp(k5, cur);
            }
            for (size_t j = k; j + 1 < conclusions.size(); ++j) {
                size_t k5 = b.meta(
                    "K5a", MetaBinding{{"a", folds[j]}, {"b", conclusions[j + 1]}});
                cur = b.mmp(k5, cur);
            }
            return done(D);
        }
        return std::nullopt;
    }

    Stm C = detail::fold_mand(premises);
    Stm goal = Statement::mimpl(C, D);
    // the whole sequent may be a single rule instance or meta-axiom instance
    if (detail::derive_closed(b, goal)) return done(goal);

    detail::UnderHyp u(b, C);
    for (size_t k = 0; k < conclusions.size(); ++k) {
        std::optional<size_t> cd = u.find(conclusions[k]);  // C => d_k
        if (!cd) {
            if (auto closed = detail::derive_closed(b, conclusions[k]))
                cd = u.lift(*closed);
        }
        if (!cd) cd = detail::back_chain(u, conclusions[k]);
        if (!cd) continue;
        size_t cur = *cd;
        if (k > 0)
            cur = u.compose(cur, b.meta("K5b", MetaBinding{{"a", folds[k - 1]},
                                                           {"b", conclusions[k]}}));
        for (size_t j = k; j + 1 < conclusions.size(); ++j)
            cur = u.compose(cur, b.meta("K5a", MetaBinding{{"a", folds[j]},
                                                           {"b", conclusions[j + 1]}}));
        return done(goal);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// search_proof

// Deterministic bounded search for a derivation of `goal` from Γ. Nullopt
// means "not found within this strategy list and budget", not "underivable".
inline std::optional<Derivation> search_proof(const DeductiveSystem& ds,
                                              const std::vector<Stm>& gamma, Stm goal,
                                              size_t budget = 10000) {
    const LemmaStore& store = lemmas_for(ds);
    ProofBuilder b(ds, store);
    auto done = [&]() -> std::optional<Derivation> {
        if (b.d.steps.size() > budget) return std::nullopt;
        Verdict v = check_derivation(ds, b.d, store);
        if (!v.accepted)
            throw std::logic_error("internal: search certificate failed at step " +
                                   std::to_string(v.step) + " (" + v.reason + ")");
        return b.d;
    };

    for (Stm g : gamma)
        if (g == goal) {
            b.premise(goal);
            return done();
        }
    if (detail::derive_closed(b, goal)) return done();

    // implication / disjunction goals over atomic statements: delegate to
    // the signed-sequent search
    auto atomic_parts = [](Stm s, bool conj) -> std::optional<std::vector<Stm>> {
        std::vector<Stm> parts;
        std::function<void(Stm)> walk = [&](Stm x) {
            if ((conj && x->kind == SKind::MAnd) || (!conj && x->kind == SKind::MOr)) {
                walk(x->a);
                parts.push_back(x->b);
            } else {
                parts.push_back(x);
            }
        };
        walk(s);
        for (Stm p : parts)
            if (!p->is_atom()) return std::nullopt;
        return parts;
    };
    if (goal->kind == SKind::MImpl) {
        auto ps = atomic_parts(goal->a, true);
        auto cs = atomic_parts(goal->b, false);
        if (ps && cs) return derivable_signed(ds, *ps, *cs, budget);
    }
    if (goal->kind == SKind::MOr) {
        auto cs = atomic_parts(goal, false);
        if (cs) return derivable_signed(ds, {}, *cs, budget);
    }
    return std::nullopt;
}

}  // namespace mlk
