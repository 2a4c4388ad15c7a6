#pragma once

// Semantic brute-force back end: two-valued truth tables, the standard
// interpretation of signed statements, finite Boolean-algebra matrices,
// bounded admissibility search and the saturation audit.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "consequence.hpp"
#include "deduction.hpp"

namespace mlk {

// ---------------------------------------------------------------------------
// Two-valued truth tables

using Valuation = std::map<std::string, bool>;

inline bool eval_formula(Frm f, const Valuation& v) {
    if (f->is_var()) {
        auto it = v.find(f->var);
        if (it == v.end()) throw std::invalid_argument("unassigned variable: " + f->var);
        return it->second;
    }
    if (f->conn == "~") return !eval_formula(f->args[0], v);
    bool a = eval_formula(f->args[0], v);
    bool b = eval_formula(f->args[1], v);
    if (f->conn == "->") return !a || b;
    if (f->conn == "&") return a && b;
    if (f->conn == "|") return a || b;
    if (f->conn == "<->") return a == b;
    throw std::invalid_argument("unknown connective: " + f->conn);
}

// Deterministic: variables in sorted order, valuations by ascending counter
// with bit i giving the i-th variable. Returns the first falsifying
// valuation, or nullopt for a tautology.
inline std::optional<Valuation> falsifying_valuation(Frm f) {
    std::set<std::string> vset = vars_of(f);
    std::vector<std::string> vs(vset.begin(), vset.end());
    if (vs.size() > 20) throw ResourceError("too many variables for truth table");
    for (uint64_t m = 0; m < (uint64_t{1} << vs.size()); ++m) {
        Valuation v;
        for (size_t i = 0; i < vs.size(); ++i) v[vs[i]] = (m >> i) & 1;
        if (!eval_formula(f, v)) return v;
    }
    return std::nullopt;
}

inline bool is_tautology(Frm f) { return !falsifying_valuation(f).has_value(); }

// A is unsatisfiable iff ~A is a tautology. Equivalently — and this is why
// the admissibility search uses it — A has no tautological substitution
// instance: a tautological instance evaluated at any point yields a
// satisfying constant tuple for A, and conversely a satisfying valuation
// gives a tautological instance by substituting (p->p) / ~(p->p).
inline bool is_unsatisfiable(Frm f) { return is_tautology(fneg(f)); }

// ---------------------------------------------------------------------------
// Standard interpretation of ground statements: +A reads "A is a tautology",
// -A reads "A is not a tautology"; meta-connectives are classical.

inline bool interpret_statement(Stm s) {
    switch (s->kind) {
        case SKind::Atom:
            return s->sign == is_tautology(s->body);
        case SKind::MTop: return true;
        case SKind::MBot: return false;
        case SKind::MNeg: return !interpret_statement(s->a);
        case SKind::MAnd: return interpret_statement(s->a) && interpret_statement(s->b);
        case SKind::MOr: return interpret_statement(s->a) || interpret_statement(s->b);
        case SKind::MImpl:
            return !interpret_statement(s->a) || interpret_statement(s->b);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Finite Boolean-algebra matrices: carrier = bit-vectors of length m,
// designated element = all-ones.

struct MatrixModel {
    int bits;
    uint32_t top;

    explicit MatrixModel(int m) : bits(m), top((m >= 32 ? 0u : (1u << m)) - 1u) {
        if (m < 1 || m > 16) throw std::invalid_argument("matrix bits out of range");
        self_check();
    }

    uint32_t op_not(uint32_t x) const { return ~x & top; }
    uint32_t op_and(uint32_t x, uint32_t y) const { return x & y; }
    uint32_t op_or(uint32_t x, uint32_t y) const { return x | y; }
    uint32_t op_imp(uint32_t x, uint32_t y) const { return op_or(op_not(x), y); }
    uint32_t op_iff(uint32_t x, uint32_t y) const { return ~(x ^ y) & top; }
    bool designated(uint32_t x) const { return x == top; }

    uint32_t eval(Frm f, const std::map<std::string, uint32_t>& v) const {
        if (f->is_var()) {
            auto it = v.find(f->var);
            if (it == v.end())
                throw std::invalid_argument("unassigned variable: " + f->var);
            return it->second;
        }
        if (f->conn == "~") return op_not(eval(f->args[0], v));
        uint32_t a = eval(f->args[0], v);
        uint32_t b = eval(f->args[1], v);
        if (f->conn == "->") return op_imp(a, b);
        if (f->conn == "&") return op_and(a, b);
        if (f->conn == "|") return op_or(a, b);
        if (f->conn == "<->") return op_iff(a, b);
        throw std::invalid_argument("unknown connective: " + f->conn);
    }

private:
    // Operations must agree with the componentwise two-valued tables.
    void self_check() const {
        for (int i = 0; i < bits; ++i) {
            uint32_t m = 1u << i;
            for (uint32_t x : {0u, m})
                for (uint32_t y : {0u, m}) {
                    bool a = x != 0, b = y != 0;
                    if (((op_and(x, y) & m) != 0) != (a && b) ||
                        ((op_or(x, y) & m) != 0) != (a || b) ||
                        ((op_imp(x, y) & m) != 0) != (!a || b) ||
                        ((op_iff(x, y) & m) != 0) != (a == b) ||
                        ((op_not(x) & m) != 0) != !a)
                        throw std::logic_error("matrix operation self-check failed");
                }
        }
    }
};

// ---------------------------------------------------------------------------
// Signed rules: a RuleForm used at the object level (Observations A/B).

using SignedRule = RuleForm;

// Local matrix validity: defined for all-asserted rules only. For every
// valuation of the rule's variables into the carrier: if all premise bodies
// are designated, some conclusion body is.
inline bool local_valid(const SignedRule& rule, const MatrixModel& M,
                        std::map<std::string, uint32_t>* witness = nullptr) {
    std::set<std::string> vset;
    auto scan = [&](Stm a) {
        if (!a->is_atom() || !a->sign)
            throw std::invalid_argument(
                "local_valid is defined for asserted atoms only; "
                "use check_admissible_bounded for signed rules");
        for (const std::string& v : vars_of(a->body)) vset.insert(v);
    };
    for (Stm a : rule.premises) scan(a);
    for (Stm a : rule.conclusions) scan(a);
    std::vector<std::string> vs(vset.begin(), vset.end());

    size_t carrier = size_t{1} << M.bits;
    double space = 1;
    for (size_t i = 0; i < vs.size(); ++i) space *= (double)carrier;
    if (space > 4e6) throw ResourceError("matrix valuation space too large");

    std::map<std::string, uint32_t> v;
    std::vector<uint32_t> idx(vs.size(), 0);
    while (true) {
        for (size_t i = 0; i < vs.size(); ++i) v[vs[i]] = idx[i];
        bool prem_ok = true;
        for (Stm a : rule.premises)
            prem_ok = prem_ok && M.designated(M.eval(a->body, v));
        if (prem_ok) {
            bool concl_ok = false;
            for (Stm a : rule.conclusions)
                concl_ok = concl_ok || M.designated(M.eval(a->body, v));
            if (!concl_ok) {
                if (witness) *witness = v;
                return false;
            }
        }
        size_t k = 0;
        while (k < idx.size() && ++idx[k] == carrier) idx[k++] = 0;
        if (k == idx.size()) break;
        if (vs.empty()) break;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Bounded admissibility search.
//
// A substitution sigma (rule variables -> formulas over a bounded universe)
// is a counterexample when every premise holds and every conclusion fails
// under the standard interpretation, with the rejection premise read
// hereditarily:
//   premise +A: sigma(A) is a tautology
//   premise -A: sigma(A) has no tautological instance, i.e. is unsatisfiable
//   conclusion +B holds: sigma(B) is a tautology
//   conclusion -B holds: sigma(B) is not a tautology
// The hereditary premise reading is what makes rejection rules meaningful
// under substitution (rejection is not closed under Sb, only assertion is).

struct AdmissibleReport {
    bool admissible;  // no counterexample within the bounds
    Substitution counterexample;
};

// Enumerates formulas over the first `vars` of p,q,r,s with <= depth
// connectives, in a canonical order: by connective count, negations before
// binary forms, binary forms by connective order ->, &, |, <-> and then by
// subformula order.
inline std::vector<Frm> formula_universe(int depth, int vars,
                                         const Signature& sig = default_signature()) {
    static const char* names[] = {"p", "q", "r", "s"};
    if (vars < 1 || vars > 4) throw std::invalid_argument("vars out of range");
    std::vector<std::vector<Frm>> by_count(depth + 1);
    for (int i = 0; i < vars; ++i) by_count[0].push_back(fvar(names[i]));
    for (int c = 1; c <= depth; ++c) {
        if (sig.has("~"))
            for (Frm a : by_count[c - 1]) by_count[c].push_back(fneg(a));
        for (auto& [sym, arity] : sig.connectives) {
            if (arity != 2) continue;
            for (int i = 0; i <= c - 1; ++i)
                for (Frm a : by_count[i])
                    for (Frm b : by_count[c - 1 - i])
                        by_count[c].push_back(Formula::mk(sym, {a, b}));
        }
    }
    std::vector<Frm> out;
    for (auto& v : by_count) out.insert(out.end(), v.begin(), v.end());
    return out;
}

inline AdmissibleReport check_admissible_bounded(const SignedRule& rule, int depth,
                                                 int vars) {
    std::set<std::string> vset;
    for (Stm a : rule.premises)
        for (const std::string& v : vars_of(a->body)) vset.insert(v);
    for (Stm a : rule.conclusions)
        for (const std::string& v : vars_of(a->body)) vset.insert(v);
    std::vector<std::string> rv(vset.begin(), vset.end());

    std::vector<Frm> targets = formula_universe(depth, vars);
    double space = 1;
    for (size_t i = 0; i < rv.size(); ++i) space *= (double)targets.size();
    if (space > 5e7) throw ResourceError("substitution space too large");

    std::vector<size_t> idx(rv.size(), 0);
    while (true) {
        Substitution sigma;
        for (size_t i = 0; i < rv.size(); ++i) sigma.bindings[rv[i]] = targets[idx[i]];
        bool prem_ok = true;
        for (Stm a : rule.premises) {
            Frm body = apply_subst(sigma, a->body);
            prem_ok = prem_ok && (a->sign ? is_tautology(body) : is_unsatisfiable(body));
            if (!prem_ok) break;
        }
        if (prem_ok) {
            bool concl_ok = false;
            for (Stm a : rule.conclusions) {
                Frm body = apply_subst(sigma, a->body);
                concl_ok = concl_ok || (a->sign == is_tautology(body));
                if (concl_ok) break;
            }
            if (!concl_ok) return {false, sigma};
        }
        // lexicographic odometer: the last variable varies fastest, so the
        // first counterexample is canonical in (first var, ..., last var)
        size_t k = idx.size();
        while (k > 0 && ++idx[k - 1] == targets.size()) idx[--k] = 0;
        if (k == 0) break;
    }
    return {true, {}};
}

// ---------------------------------------------------------------------------
// Contraposition of an all-asserted single-conclusion rule A1..An / B into
// the refutation rule -B / -A1, ..., -An.

inline SignedRule contrapose_rule(const SignedRule& rule) {
    if (rule.conclusions.size() != 1)
        throw std::invalid_argument("contrapose_rule needs a single conclusion");
    for (Stm a : rule.premises)
        if (!a->is_atom() || !a->sign)
            throw std::invalid_argument("contrapose_rule needs all-asserted premises");
    Stm c = *rule.conclusions.begin();
    if (!c->is_atom() || !c->sign)
        throw std::invalid_argument("contrapose_rule needs an asserted conclusion");
    SignedRule out;
    out.premises.insert(Statement::atom(false, c->body));
    for (Stm a : rule.premises) out.conclusions.insert(Statement::atom(false, a->body));
    return out;
}

namespace detail {
// Schema match extending an existing binding; fails on conflicts.
inline bool merge_match(Frm pattern, Frm target, Substitution& bind) {
    auto m = match_schema_formula(pattern, target);
    if (!m) return false;
    for (auto& [v, f] : m->bindings) {
        auto it = bind.bindings.find(v);
        if (it != bind.bindings.end()) {
            if (it->second != f) return false;
        } else {
            bind.bindings[v] = f;
        }
    }
    return true;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// Saturation audit.
//
// Enumerates the atomic statements derivable by bounded saturation inside a
// finite formula universe (node-count cap over a fixed variable supply):
// axioms, substitution instances of asserted atoms, reverse-substitution
// images of rejected atoms (when the system admits RS), and applications of
// the system's rules whose conclusion is a single atom. Rules with
// disjunctive conclusions contribute no atoms: a meta-disjunction does not
// license either disjunct (the audit is saturation-wise over atoms, which is
// exactly what keeps the disjunction-rule system clean).

struct AuditFinding {
    std::string kind;  // "ambivalent" | "assert-non-tautology" | "reject-tautology"
    Frm witness;
};

struct AuditReport {
    std::vector<AuditFinding> findings;
    size_t asserted_count = 0;
    size_t rejected_count = 0;
    bool clean() const { return findings.empty(); }
};

inline AuditReport saturate_and_audit(const DeductiveSystem& ds, int size_cap,
                                      int var_cap) {
    // the universe: formulas in the system's signature, node_count <= cap
    static const char* names[] = {"p", "q", "r", "s"};
    if (var_cap < 1 || var_cap > 4) throw std::invalid_argument("var cap out of range");
    std::vector<std::vector<Frm>> by_size(size_cap + 1);
    for (int i = 0; i < var_cap; ++i) by_size[1].push_back(fvar(names[i]));
    for (int s = 2; s <= size_cap; ++s) {
        if (ds.signature.has("~"))
            for (Frm a : by_size[s - 1]) by_size[s].push_back(fneg(a));
        for (auto& [sym, arity] : ds.signature.connectives) {
            if (arity != 2) continue;
            for (int i = 1; i <= s - 2; ++i)
                for (Frm a : by_size[i])
                    for (Frm b : by_size[s - 1 - i])
                        by_size[s].push_back(Formula::mk(sym, {a, b}));
        }
    }
    std::vector<Frm> universe;
    for (auto& v : by_size) universe.insert(universe.end(), v.begin(), v.end());
    if (universe.size() > 20000) throw ResourceError("saturation universe too large");

    std::set<Stm> derived;
    std::vector<Stm> queue;
    auto add = [&](Stm s) {
        if (derived.insert(s).second) queue.push_back(s);
    };
    auto in_universe = [&](Frm f) {
        return node_count(f) <= size_cap &&
               [&] {
                   for (const std::string& v : vars_of(f)) {
                       bool ok = false;
                       for (int i = 0; i < var_cap; ++i) ok = ok || v == names[i];
                       if (!ok) return false;
                   }
                   return true;
               }();
    };

    // Axioms seed the saturation even when their bodies lie outside the
    // universe (the extended axioms range over a,b,c); their in-universe
    // substitution instances arrive through the Sb closure below.
    for (auto& [id, ax] : ds.axioms)
        if (ax->is_atom()) add(ax);

    // rule premises split into atomic parts once
    struct FlatRule {
        std::vector<Stm> parts;  // atomic premise schemata
        Stm concl;               // atomic conclusion schema, or null
    };
    std::vector<FlatRule> flat;
    for (auto& [id, sch] : ds.rules) {
        if (sch->kind != SKind::MImpl) continue;
        FlatRule fr;
        std::vector<Stm> parts;
        std::function<void(Stm)> split = [&](Stm s) {
            if (s->kind == SKind::MAnd) {
                split(s->a);
                split(s->b);
            } else {
                parts.push_back(s);
            }
        };
        split(sch->a);
        bool ok = true;
        for (Stm pt : parts) ok = ok && (pt->is_atom() || pt->kind == SKind::MTop);
        fr.concl = sch->b->is_atom() ? sch->b : nullptr;
        if (!ok || !fr.concl) continue;  // disjunctive conclusions add no atoms
        for (Stm pt : parts)
            if (pt->is_atom()) fr.parts.push_back(pt);
        flat.push_back(fr);
    }

    // saturation over the finite universe
    bool grew = true;
    while (grew) {
        grew = false;
        size_t before = derived.size();

        std::vector<Stm> snapshot(derived.begin(), derived.end());
        // Sb on asserted atoms / RS producing rejected atoms: an atom +B (or
        // -A) is derivable when B is an instance of some derived +A (when
        // some derived -B is an instance of A).
        for (Stm s : snapshot) {
            for (Frm g : universe) {
                if (s->sign) {
                    if (match_formula(s->body, g)) add(Statement::asserted(g));
                } else if (ds.allow_rs) {
                    if (match_formula(g, s->body)) add(Statement::atom(false, g));
                }
            }
        }

        // rules with a single atomic conclusion
        for (const FlatRule& fr : flat) {
            std::vector<Stm> all(derived.begin(), derived.end());
            std::function<void(size_t, const Substitution&)> fire =
                [&](size_t i, const Substitution& bind) {
                    if (i == fr.parts.size()) {
                        Frm cb = apply_subst(bind, fr.concl->body);
                        if (in_universe(cb)) add(Statement::atom(fr.concl->sign, cb));
                        return;
                    }
                    Stm pat = fr.parts[i];
                    for (Stm s : all) {
                        if (s->sign != pat->sign) continue;
                        Substitution b2 = bind;
                        if (detail::merge_match(pat->body, s->body, b2)) fire(i + 1, b2);
                    }
                };
            fire(0, Substitution{});
        }
        grew = derived.size() > before;
    }

    AuditReport rep;
    std::set<Frm> asserted, rejected;
    for (Stm s : derived)
        (s->sign ? asserted : rejected).insert(s->body);
    rep.asserted_count = asserted.size();
    rep.rejected_count = rejected.size();
    for (Frm f : asserted) {
        if (rejected.count(f)) rep.findings.push_back({"ambivalent", f});
        if (!is_tautology(f)) rep.findings.push_back({"assert-non-tautology", f});
    }
    for (Frm f : rejected)
        if (is_tautology(f)) rep.findings.push_back({"reject-tautology", f});
    return rep;
}

}  // namespace mlk
