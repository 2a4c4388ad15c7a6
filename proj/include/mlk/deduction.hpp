#pragma once

// Deductive systems over statements, the twelve meta-axiom schemata, and the
// derivation checker: a derivation is a numbered list of statements, each
// justified as a meta-axiom instance, a system axiom, a rule-schema instance,
// Substitution (positive statements only), Reverse Substitution (negative
// statements only), meta modus ponens, a premise, or a previously certified
// lemma. Checking is pure and search-free.

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "statement.hpp"

namespace mlk {

// ---------------------------------------------------------------------------
// Meta-axiom schemata.
//
// Schemata range over statement placeholders. They are written as statements
// whose atoms are asserted bare variables (+a, +b, +c) standing for arbitrary
// statements; this encoding is internal to the matcher below.

struct MetaAxiom {
    std::string id;
    Stm schema;
};

inline const std::vector<MetaAxiom>& meta_axioms() {
    static const std::vector<MetaAxiom> axs = [] {
        auto mk = [](const char* id, const char* src) {
            return MetaAxiom{id, parse_statement(src)};
        };
        // Positive-implication, conjunction, disjunction and negation group,
        // plus the two axioms tying TOP/BOT to derivability.
        return std::vector<MetaAxiom>{
            mk("K1", "+a => (+b => +a)"),
            mk("K2", "(+a => +b) => ((+a => (+b => +c)) => (+a => +c))"),
            mk("K3", "+a => (+b => (+a AND +b))"),
            mk("K4a", "(+a AND +b) => +a"),
            mk("K4b", "(+a AND +b) => +b"),
            mk("K5a", "+a => (+a OR +b)"),
            mk("K5b", "+b => (+a OR +b)"),
            mk("K6", "(+a => +c) => ((+b => +c) => ((+a OR +b) => +c))"),
            mk("K7", "(+a => +b) => ((+a => NOT +b) => NOT +a)"),
            mk("K8", "NOT NOT +a => +a"),
            mk("AxTop", "(TOP => +a) => +a"),
            mk("AxBot", "BOT => +a"),
        };
    }();
    return axs;
}

using MetaBinding = std::map<std::string, Stm>;  // placeholder -> statement

namespace detail {
inline bool meta_match(Stm schema, Stm target, MetaBinding& bind) {
    // placeholder leaf: asserted atom whose body is a bare variable
    if (schema->is_atom() && schema->sign && schema->body->is_var()) {
        auto it = bind.find(schema->body->var);
        if (it != bind.end()) return it->second == target;
        bind.emplace(schema->body->var, target);
        return true;
    }
    if (schema->kind != target->kind) return false;
    switch (schema->kind) {
        case SKind::MTop:
        case SKind::MBot:
            return true;
        case SKind::MNeg:
            return meta_match(schema->a, target->a, bind);
        case SKind::Atom:
            return false;  // non-placeholder atoms do not occur in schemata
        default:
            return meta_match(schema->a, target->a, bind) &&
                   meta_match(schema->b, target->b, bind);
    }
}

inline Stm meta_build(Stm schema, const MetaBinding& bind) {
    if (schema->is_atom() && schema->sign && schema->body->is_var()) {
        auto it = bind.find(schema->body->var);
        if (it == bind.end())
            throw std::invalid_argument("meta-axiom placeholder unbound: " +
                                        schema->body->var);
        return it->second;
    }
    switch (schema->kind) {
        case SKind::MTop:
        case SKind::MBot:
            return schema;
        case SKind::MNeg:
            return Statement::mneg(meta_build(schema->a, bind));
        case SKind::MAnd:
            return Statement::mand(meta_build(schema->a, bind), meta_build(schema->b, bind));
        case SKind::MOr:
            return Statement::mor(meta_build(schema->a, bind), meta_build(schema->b, bind));
        case SKind::MImpl:
            return Statement::mimpl(meta_build(schema->a, bind), meta_build(schema->b, bind));
        case SKind::Atom:
            throw std::logic_error("unreachable");
    }
    throw std::logic_error("unreachable");
}
}  // namespace detail

// Builds the instance of the named meta-axiom under the given placeholder map.
inline Stm meta_axiom_instance(const std::string& id, const MetaBinding& bind) {
    for (auto& ax : meta_axioms())
        if (ax.id == id) return detail::meta_build(ax.schema, bind);
    throw std::invalid_argument("unknown meta-axiom: " + id);
}

// Recognizes a statement as an instance of some meta-axiom schema.
inline std::optional<std::pair<std::string, MetaBinding>> is_meta_axiom(Stm s) {
    for (auto& ax : meta_axioms()) {
        MetaBinding b;
        if (detail::meta_match(ax.schema, s, b)) return std::make_pair(ax.id, b);
    }
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Deductive systems

struct DeductiveSystem {
    std::string name;
    Signature signature = default_signature();
    std::vector<std::pair<std::string, Stm>> axioms;  // id -> ground statement
    std::vector<std::pair<std::string, Stm>> rules;   // id -> schema statement
    // Reverse Substitution may be switched off per system (used for the
    // Smiley scenario, whose logic does not admit RS).
    bool allow_rs = true;

    Stm axiom(const std::string& id) const {
        for (auto& [n, s] : axioms)
            if (n == id) return s;
        return nullptr;
    }
    Stm rule(const std::string& id) const {
        for (auto& [n, s] : rules)
            if (n == id) return s;
        return nullptr;
    }
};

// ---------------------------------------------------------------------------
// Justifications and derivations

struct JMetaAxiom {
    std::string id;
    MetaBinding inst;
};
struct JAxiom {
    std::string id;
};
struct JRule {
    std::string id;
    Substitution bind;  // metavariable -> formula
};
struct JSb {
    size_t ref;
    Substitution s;
};
struct JRS {
    size_t ref;
    Substitution s;
};
struct JMMP {
    size_t major, minor;
};
struct JPremise {};
struct JLemma {
    std::string name;
};

using Justification =
    std::variant<JMetaAxiom, JAxiom, JRule, JSb, JRS, JMMP, JPremise, JLemma>;

struct Step {
    Stm stm;
    Justification just;
};

struct Derivation {
    std::vector<Stm> premises;
    std::vector<Step> steps;

    Stm conclusion() const {
        if (steps.empty()) throw std::invalid_argument("empty derivation");
        return steps.back().stm;
    }
};

// ---------------------------------------------------------------------------
// Lemma store: named statements usable via the Lemma justification. A lemma
// is usable only once certified (a derivation for it has been checked in the
// owning system). Derivations are dropped after verification unless the
// store is put in retain mode.

struct Verdict;
class LemmaStore;
inline Verdict check_derivation(const DeductiveSystem& ds, const Derivation& d,
                                const LemmaStore& lemmas);

struct Verdict {
    bool accepted;
    size_t step = 0;      // first failing step when rejected
    std::string reason;   // machine-readable code

    static Verdict ok() { return {true, 0, ""}; }
    static Verdict fail(size_t step, std::string reason) {
        return {false, step, std::move(reason)};
    }
};

class LemmaStore {
public:
    struct Entry {
        Stm stm;
        bool verified = false;
        std::optional<Derivation> derivation;  // kept only in retain mode
    };

    bool retain_derivations = false;

    const Entry* find(const std::string& name) const {
        auto it = entries_.find(name);
        return it == entries_.end() ? nullptr : &it->second;
    }

    // Certifies and stores a lemma; throws on a failed check.
    void certify(const std::string& name, const DeductiveSystem& ds, const Derivation& d) {
        Verdict v = check_derivation(ds, d, *this);
        if (!v.accepted)
            throw std::invalid_argument("lemma '" + name + "' failed to check at step " +
                                        std::to_string(v.step) + ": " + v.reason);
        if (!d.premises.empty())
            throw std::invalid_argument("lemma '" + name + "' has premises");
        Entry e;
        e.stm = d.conclusion();
        e.verified = true;
        if (retain_derivations) e.derivation = d;
        pin_statement(e.stm);  // store entries outlive any scratch region
        entries_[name] = std::move(e);
    }

    // Stores an unverified statement (not usable by the checker until
    // certified); exists so files can declare expectations.
    void declare(const std::string& name, Stm s) {
        if (entries_.count(name)) return;
        pin_statement(s);
        entries_[name] = Entry{s, false, std::nullopt};
    }

    const std::map<std::string, Entry>& entries() const { return entries_; }

private:
    std::map<std::string, Entry> entries_;
};

// ---------------------------------------------------------------------------
// The checker

inline Verdict check_derivation(const DeductiveSystem& ds, const Derivation& d,
                                const LemmaStore& lemmas) {
    if (d.steps.empty()) return Verdict::fail(0, "empty-derivation");
    std::set<Stm> premise_set(d.premises.begin(), d.premises.end());

    for (size_t i = 0; i < d.steps.size(); ++i) {
        const Step& st = d.steps[i];
        const Justification& j = st.just;

        if (auto* m = std::get_if<JMetaAxiom>(&j)) {
            Stm want;
            try {
                want = meta_axiom_instance(m->id, m->inst);
            } catch (const std::invalid_argument&) {
                return Verdict::fail(i, "not-meta-axiom");
            }
            if (want != st.stm) return Verdict::fail(i, "not-meta-axiom");
        } else if (auto* a = std::get_if<JAxiom>(&j)) {
            Stm ax = ds.axiom(a->id);
            if (!ax) return Verdict::fail(i, "unknown-axiom");
            if (ax != st.stm) return Verdict::fail(i, "bad-instance");
        } else if (auto* r = std::get_if<JRule>(&j)) {
            Stm sch = ds.rule(r->id);
            if (!sch) return Verdict::fail(i, "unknown-rule");
            if (build_instance(sch, r->bind) != st.stm) return Verdict::fail(i, "bad-instance");
        } else if (auto* sb = std::get_if<JSb>(&j)) {
            if (sb->ref >= i) return Verdict::fail(i, "dangling-reference");
            Stm src = d.steps[sb->ref].stm;
            if (polarity(src) != Polarity::Positive)
                return Verdict::fail(i, "sb-on-negative");
            if (subst_statement(sb->s, src) != st.stm)
                return Verdict::fail(i, "substitution-mismatch");
        } else if (auto* rs = std::get_if<JRS>(&j)) {
            if (!ds.allow_rs) return Verdict::fail(i, "rs-disabled");
            if (rs->ref >= i) return Verdict::fail(i, "dangling-reference");
            // from sigma(alpha) infer alpha, alpha negative: the CURRENT
            // statement is alpha; the earlier step must be its sigma-image.
            if (polarity(st.stm) != Polarity::Negative)
                return Verdict::fail(i, "rs-on-positive");
            if (subst_statement(rs->s, st.stm) != d.steps[rs->ref].stm)
                return Verdict::fail(i, "substitution-mismatch");
        } else if (auto* mp = std::get_if<JMMP>(&j)) {
            if (mp->major >= i || mp->minor >= i)
                return Verdict::fail(i, "dangling-reference");
            Stm major = d.steps[mp->major].stm;
            Stm minor = d.steps[mp->minor].stm;
            if (major->kind != SKind::MImpl || major->a != minor || major->b != st.stm)
                return Verdict::fail(i, "bad-mmp");
        } else if (std::get_if<JPremise>(&j)) {
            if (!premise_set.count(st.stm)) return Verdict::fail(i, "bad-premise");
        } else if (auto* lm = std::get_if<JLemma>(&j)) {
            const LemmaStore::Entry* e = lemmas.find(lm->name);
            if (!e || !e->verified) return Verdict::fail(i, "unknown-lemma");
            if (e->stm != st.stm) return Verdict::fail(i, "lemma-mismatch");
        } else {
            return Verdict::fail(i, "unknown-justification");
        }
    }
    return Verdict::ok();
}

// ---------------------------------------------------------------------------
// Rule application macro: expands an inner-rule application into checkable
// steps. For a rule (P1 AND ... AND Pk) => Q with all premises already on
// earlier steps, emits the K3 conjunction-building steps, the rule instance
// and the final MMP. Appends to d and returns the index of the last step.

namespace detail {
// splits a left-associated meta-conjunction into its parts
inline void split_conj(Stm s, std::vector<Stm>& out) {
    if (s->kind == SKind::MAnd) {
        split_conj(s->a, out);
        out.push_back(s->b);
    } else {
        out.push_back(s);
    }
}
}  // namespace detail

inline size_t apply_rule_macro(const DeductiveSystem& ds, Derivation& d,
                               const std::string& rule_id, const Substitution& bind,
                               const std::vector<size_t>& premise_steps) {
    Stm sch = ds.rule(rule_id);
    if (!sch) throw std::invalid_argument("unknown rule: " + rule_id);
    if (sch->kind != SKind::MImpl)
        throw std::invalid_argument("rule schema is not an implication: " + rule_id);
    Stm inst = build_instance(sch, bind);

    std::vector<Stm> parts;
    detail::split_conj(inst->a, parts);
    if (parts.size() != premise_steps.size())
        throw std::invalid_argument("rule premise count mismatch");
    for (size_t i = 0; i < parts.size(); ++i) {
        if (premise_steps[i] >= d.steps.size() ||
            d.steps[premise_steps[i]].stm != parts[i])
            throw std::invalid_argument("rule premise mismatch at argument " +
                                        std::to_string(i));
    }

    // fold the premises into the conjunction, left-associated
    size_t acc_step = premise_steps.empty() ? SIZE_MAX : premise_steps[0];
    Stm acc = premise_steps.empty() ? nullptr : parts[0];
    for (size_t i = 1; i < parts.size(); ++i) {
        Stm nxt = parts[i];
        Stm conj = Statement::mand(acc, nxt);
        // K3: acc => (nxt => acc AND nxt)
        MetaBinding mb{{"a", acc}, {"b", nxt}};
        d.steps.push_back({meta_axiom_instance("K3", mb), JMetaAxiom{"K3", mb}});
        size_t k3 = d.steps.size() - 1;
        d.steps.push_back(
            {Statement::mimpl(nxt, conj), JMMP{k3, acc_step}});
        size_t half = d.steps.size() - 1;
        d.steps.push_back({conj, JMMP{half, premise_steps[i]}});
        acc_step = d.steps.size() - 1;
        acc = conj;
    }

    d.steps.push_back({inst, JRule{rule_id, bind}});
    size_t rule_step = d.steps.size() - 1;
    if (premise_steps.empty())
        return rule_step;  // premise-free rule: the instance itself
    d.steps.push_back({inst->b, JMMP{rule_step, acc_step}});
    return d.steps.size() - 1;
}

}  // namespace mlk
