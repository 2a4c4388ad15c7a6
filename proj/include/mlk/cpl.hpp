#pragma once

// Built-in calculi for two-valued classical logic and the certificate
// producing decision procedure:
//
//  * lukasiewicz_core    — {->,~}; three assertion axioms, anti-axiom -p,
//                          rules MP and MT
//  * classical_extended  — full signature; Kleene-style object axioms plus
//                          three axioms governing <->, the same anti-axiom
//                          and rules
//  * with_disjunction_rule — extended plus +(X|Y) => (+X OR +Y)
//  * smiley              — extended base without the anti-axiom; rules
//                          r1: -X => +~X and r2: +~X => -X; reverse
//                          substitution disabled
//  * rk(n)               — extended plus the premise-free pigeonhole rule
//                          TOP => OR_{i<j} +(x_i <-> x_j)
//
// decide/prove/refute generate Hilbert derivations by Kalmar-style valuation
// case analysis compiled through the deduction-theorem machinery of
// hilbert.hpp; every certificate re-checks with check_derivation.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hilbert.hpp"
#include "oracle.hpp"

namespace mlk {

// ---------------------------------------------------------------------------
// Error carriers

struct SignatureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotATautology : std::runtime_error {
    Valuation falsifier;
    explicit NotATautology(Valuation v)
        : std::runtime_error("not a tautology"), falsifier(std::move(v)) {}
};
struct IsATautology : std::runtime_error {
    Derivation proof;
    explicit IsATautology(Derivation d)
        : std::runtime_error("cannot refute a tautology"), proof(std::move(d)) {}
};

// ---------------------------------------------------------------------------
// The built-in systems

namespace detail {
inline std::pair<std::string, Stm> ax(const char* id, const char* src) {
    return {id, parse_statement(src)};
}
}  // namespace detail

inline const DeductiveSystem& lukasiewicz_core() {
    using detail::ax;
    static const DeductiveSystem ds = [] {
        DeductiveSystem s;
        s.name = "lukasiewicz_core";
        s.signature = arrow_neg_signature();
        s.axioms = {
            ax("A1", "+((p -> q) -> ((q -> r) -> (p -> r)))"),
            ax("A2", "+((~p -> p) -> p)"),
            ax("A3", "+(p -> (~p -> q))"),
            ax("anti", "-p"),
        };
        s.rules = {
            ax("MP", "(+X AND +(X -> Y)) => +Y"),
            ax("MT", "(-Y AND +(X -> Y)) => -X"),
        };
        return s;
    }();
    return ds;
}

namespace detail {
inline DeductiveSystem extended_base(const std::string& name) {
    DeductiveSystem s;
    s.name = name;
    s.signature = default_signature();
    s.axioms = {
        ax("k1", "+(a -> (b -> a))"),
        ax("k2", "+((a -> b) -> ((a -> (b -> c)) -> (a -> c)))"),
        ax("k3", "+(a -> (b -> (a & b)))"),
        ax("k4a", "+((a & b) -> a)"),
        ax("k4b", "+((a & b) -> b)"),
        ax("k5a", "+(a -> (a | b))"),
        ax("k5b", "+(b -> (a | b))"),
        ax("k6", "+((a -> c) -> ((b -> c) -> ((a | b) -> c)))"),
        ax("k7", "+((a -> b) -> ((a -> ~b) -> ~a))"),
        ax("k8", "+(~~a -> a)"),
        ax("e1", "+((a <-> b) -> (a -> b))"),
        ax("e2", "+((a <-> b) -> (b -> a))"),
        ax("e3", "+((a -> b) -> ((b -> a) -> (a <-> b)))"),
        ax("anti", "-p"),
    };
    s.rules = {
        ax("MP", "(+X AND +(X -> Y)) => +Y"),
        ax("MT", "(-Y AND +(X -> Y)) => -X"),
    };
    return s;
}
}  // namespace detail

inline const DeductiveSystem& classical_extended() {
    static const DeductiveSystem ds = detail::extended_base("classical_extended");
    return ds;
}

inline const DeductiveSystem& with_disjunction_rule() {
    static const DeductiveSystem ds = [] {
        DeductiveSystem s = detail::extended_base("with_disjunction_rule");
        s.rules.push_back(detail::ax("DISJ", "+(X | Y) => (+X OR +Y)"));
        return s;
    }();
    return ds;
}

// Smiley scenario base: no anti-axiom, RS disabled, rejection handled by the
// rules r1/r2 alone.
inline const DeductiveSystem& smiley_system() {
    static const DeductiveSystem ds = [] {
        DeductiveSystem s = detail::extended_base("smiley");
        s.axioms.erase(s.axioms.end() - 1);  // drop the anti-axiom
        s.rules.push_back(detail::ax("r1", "-X => +~X"));
        s.rules.push_back(detail::ax("r2", "+~X => -X"));
        s.allow_rs = false;
        return s;
    }();
    return ds;
}

// Smiley plus the Lukasiewicz anti-axiom: the trivialization scenario.
inline const DeductiveSystem& smiley_with_anti() {
    static const DeductiveSystem ds = [] {
        DeductiveSystem s = smiley_system();
        s.name = "smiley_anti";
        s.axioms.push_back(detail::ax("anti", "-p"));
        return s;
    }();
    return ds;
}

// Pigeonhole rule with n variables: TOP => OR_{i<j} +(x_i <-> x_j).
inline Stm rk_rule_schema(int n) {
    if (n < 2) throw std::invalid_argument("rk rule needs at least 2 variables");
    std::vector<Frm> xs;
    for (int i = 1; i <= n; ++i) xs.push_back(fvar("X" + std::to_string(i)));
    Stm acc = nullptr;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Stm lit = Statement::asserted(fiff(xs[i], xs[j]));
            acc = acc ? Statement::mor(acc, lit) : lit;
        }
    return Statement::mimpl(Statement::mtop(), acc);
}

inline DeductiveSystem rk_system(int n) {
    DeductiveSystem s = detail::extended_base("rk" + std::to_string(n));
    s.rules.push_back({"RK", rk_rule_schema(n)});
    return s;
}

// ---------------------------------------------------------------------------
// Extended-basis lemma bootstrap (deduction theorem over k1/k2)

inline void bootstrap_extended_lemmas(const DeductiveSystem& ext, LemmaStore& store) {
    if (store.find("x.cases")) return;

    Frm p = fvar("p"), q = fvar("q");
    Substitution sab({{"a", p}, {"b", q}});

    // x.id: p -> p directly from k1/k2
    {
        ProofBuilder b(ext, store);
        Frm pp = fimp(p, p);
        size_t i1 = b.axiom_sb("k1", Substitution({{"a", p}, {"b", p}}));
        size_t i2 = b.axiom_sb("k1", Substitution({{"a", p}, {"b", pp}}));
        size_t i3 = b.axiom_sb("k2", Substitution({{"a", p}, {"b", pp}, {"c", p}}));
        b.mp_obj(b.mp_obj(i3, i1), i2);
        store.certify("x.id", ext, b.d);
    }
    // x.efqi: ~p -> (p -> q)
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto np = hp.assume(fneg(p));
        auto pp = hp.assume(p);
        auto l1 = hp.mp(hp.thm_axiom("k1", Substitution({{"a", p}, {"b", fneg(q)}})), pp);
        auto l2 = hp.mp(hp.thm_axiom("k1", Substitution({{"a", fneg(p)}, {"b", fneg(q)}})), np);
        auto k7 = hp.thm_axiom("k7", Substitution({{"a", fneg(q)}, {"b", p}}));
        auto nnq = hp.mp(hp.mp(k7, l1), l2);
        auto k8 = hp.thm_axiom("k8", Substitution({{"a", q}}));
        hp.close(hp.mp(k8, nnq));
        store.certify("x.efqi", ext, b.d);
    }
    // x.dni: p -> ~~p
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto pp = hp.assume(p);
        auto c1 = hp.mp(hp.thm_axiom("k1", Substitution({{"a", p}, {"b", fneg(p)}})), pp);
        auto c2 = hp.thm_lemma("x.id", Substitution({{"p", fneg(p)}}));
        auto k7 = hp.thm_axiom("k7", Substitution({{"a", fneg(p)}, {"b", p}}));
        hp.close(hp.mp(hp.mp(k7, c1), c2));
        store.certify("x.dni", ext, b.d);
    }
    // x.contra2: (p -> q) -> (~q -> ~p)
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto h1 = hp.assume(fimp(p, q));
        auto h2 = hp.assume(fneg(q));
        auto k7 = hp.thm_axiom("k7", sab);
        auto t1 = hp.mp(k7, h1);  // (p -> ~q) -> ~p
        auto lift = hp.mp(hp.thm_axiom("k1", Substitution({{"a", fneg(q)}, {"b", p}})), h2);
        hp.close(hp.mp(t1, lift));
        store.certify("x.contra2", ext, b.d);
    }
    // x.cases: (p -> q) -> ((~p -> q) -> q)
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto h1 = hp.assume(fimp(p, q));
        auto h2 = hp.assume(fimp(fneg(p), q));
        auto t1 = hp.mp(hp.thm_lemma("x.contra2"), h1);  // ~q -> ~p
        auto c2 = hp.thm_lemma("x.contra2", Substitution({{"p", fneg(p)}, {"q", q}}));
        auto t2 = hp.mp(c2, h2);  // ~q -> ~~p
        auto k7 = hp.thm_axiom("k7", Substitution({{"a", fneg(q)}, {"b", fneg(p)}}));
        auto nnq = hp.mp(hp.mp(k7, t1), t2);
        auto k8 = hp.thm_axiom("k8", Substitution({{"a", q}}));
        hp.close(hp.mp(k8, nnq));
        store.certify("x.cases", ext, b.d);
    }
    // x.nand1: ~p -> ~(p & q);  x.nand2: ~q -> ~(p & q)
    {
        ProofBuilder b(ext, store);
        size_t c = b.lemma_sb("x.contra2", Substitution({{"p", fand(p, q)}, {"q", p}}));
        b.mp_obj(c, b.axiom_sb("k4a", sab));
        store.certify("x.nand1", ext, b.d);
    }
    {
        ProofBuilder b(ext, store);
        size_t c = b.lemma_sb("x.contra2", Substitution({{"p", fand(p, q)}, {"q", q}}));
        b.mp_obj(c, b.axiom_sb("k4b", sab));
        store.certify("x.nand2", ext, b.d);
    }
    // x.nor: ~p -> (~q -> ~(p | q))
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto np = hp.assume(fneg(p));
        auto nq = hp.assume(fneg(q));
        auto qp = hp.mp(hp.thm_lemma("x.efqi", Substitution({{"p", q}, {"q", p}})), nq);
        auto k6 = hp.thm_axiom("k6", Substitution({{"a", p}, {"b", q}, {"c", p}}));
        auto c1 = hp.mp(hp.mp(k6, hp.thm_lemma("x.id")), qp);  // (p|q) -> p
        auto c2 = hp.mp(hp.thm_axiom("k1", Substitution({{"a", fneg(p)}, {"b", forr(p, q)}})), np);
        auto k7 = hp.thm_axiom("k7", Substitution({{"a", forr(p, q)}, {"b", p}}));
        hp.close(hp.mp(hp.mp(k7, c1), c2));
        store.certify("x.nor", ext, b.d);
    }
    // x.imp.elim: p -> ((p -> q) -> q)
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto h1 = hp.assume(p);
        auto h2 = hp.assume(fimp(p, q));
        hp.close(hp.mp(h2, h1));
        store.certify("x.imp.elim", ext, b.d);
    }
    // x.nimp: p -> (~q -> ~(p -> q))
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        Frm cpq = fimp(p, q);
        auto h1 = hp.assume(p);
        auto h2 = hp.assume(fneg(q));
        auto t1 = hp.mp(hp.thm_lemma("x.imp.elim"), h1);  // (p->q) -> q
        auto t2 = hp.mp(hp.thm_axiom("k1", Substitution({{"a", fneg(q)}, {"b", cpq}})), h2);
        auto k7 = hp.thm_axiom("k7", Substitution({{"a", cpq}, {"b", q}}));
        hp.close(hp.mp(hp.mp(k7, t1), t2));
        store.certify("x.nimp", ext, b.d);
    }
    // x.iff.elim1: p -> ((p <-> q) -> q);  x.iff.elim2: q -> ((p <-> q) -> p)
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto h1 = hp.assume(p);
        auto h2 = hp.assume(fiff(p, q));
        auto imp = hp.mp(hp.thm_axiom("e1", sab), h2);
        hp.close(hp.mp(imp, h1));
        store.certify("x.iff.elim1", ext, b.d);
    }
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto h1 = hp.assume(q);
        auto h2 = hp.assume(fiff(p, q));
        auto imp = hp.mp(hp.thm_axiom("e2", sab), h2);
        hp.close(hp.mp(imp, h1));
        store.certify("x.iff.elim2", ext, b.d);
    }
    // x.iff.tt: p -> (q -> (p <-> q));  x.iff.ff: ~p -> (~q -> (p <-> q))
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto h1 = hp.assume(p);
        auto h2 = hp.assume(q);
        auto pq = hp.mp(hp.thm_axiom("k1", Substitution({{"a", q}, {"b", p}})), h2);
        auto qp = hp.mp(hp.thm_axiom("k1", Substitution({{"a", p}, {"b", q}})), h1);
        auto e3 = hp.thm_axiom("e3", sab);
        hp.close(hp.mp(hp.mp(e3, pq), qp));
        store.certify("x.iff.tt", ext, b.d);
    }
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        auto h1 = hp.assume(fneg(p));
        auto h2 = hp.assume(fneg(q));
        auto pq = hp.mp(hp.thm_lemma("x.efqi"), h1);
        auto qp = hp.mp(hp.thm_lemma("x.efqi", Substitution({{"p", q}, {"q", p}})), h2);
        auto e3 = hp.thm_axiom("e3", sab);
        hp.close(hp.mp(hp.mp(e3, pq), qp));
        store.certify("x.iff.ff", ext, b.d);
    }
    // x.niff.tf: p -> (~q -> ~(p <-> q));  x.niff.ft: ~p -> (q -> ~(p <-> q))
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        Frm piq = fiff(p, q);
        auto h1 = hp.assume(p);
        auto h2 = hp.assume(fneg(q));
        auto t1 = hp.mp(hp.thm_lemma("x.iff.elim1"), h1);  // (p<->q) -> q
        auto t2 = hp.mp(hp.thm_axiom("k1", Substitution({{"a", fneg(q)}, {"b", piq}})), h2);
        auto k7 = hp.thm_axiom("k7", Substitution({{"a", piq}, {"b", q}}));
        hp.close(hp.mp(hp.mp(k7, t1), t2));
        store.certify("x.niff.tf", ext, b.d);
    }
    {
        ProofBuilder b(ext, store);
        HypProver hp(b, Basis::Extended);
        Frm piq = fiff(p, q);
        auto h1 = hp.assume(fneg(p));
        auto h2 = hp.assume(q);
        auto t1 = hp.mp(hp.thm_lemma("x.iff.elim2"), h2);  // (p<->q) -> p
        auto t2 = hp.mp(hp.thm_axiom("k1", Substitution({{"a", fneg(p)}, {"b", piq}})), h1);
        auto k7 = hp.thm_axiom("k7", Substitution({{"a", piq}, {"b", p}}));
        hp.close(hp.mp(hp.mp(k7, t1), t2));
        store.certify("x.niff.ft", ext, b.d);
    }
}

// ---------------------------------------------------------------------------
// Per-system lemma stores

inline Basis basis_of(const DeductiveSystem& ds) {
    return ds.axiom("A1") ? Basis::Core : Basis::Extended;
}

inline LemmaStore& lemmas_for(const DeductiveSystem& ds) {
    static std::map<std::string, LemmaStore> stores;
    LemmaStore& st = stores[ds.name];
    if (basis_of(ds) == Basis::Core)
        bootstrap_core_lemmas(ds, st);
    else if (ds.axiom("k1"))
        bootstrap_extended_lemmas(ds, st);
    return st;
}

// ---------------------------------------------------------------------------
// Kalmar-style tautology prover
//
// The valuation case analysis is memoized across calls through the lemma
// store: for a subformula f and a valuation v of its variables, the truth
// lemma kal.<bits>.<f> certifies
//
//     +(lit_1 -> (lit_2 -> ... -> f'))
//
// where lit_i ranges over the variables of f in sorted order, signed by v,
// and f' is f when v satisfies it and ~f otherwise. A proof of a case then
// detaches ready-made truth lemmas for the immediate subformulas instead of
// re-deriving them, which keeps certificates small and amortizes the heavy
// deduction-theorem compilation across a batch of decisions.

inline size_t emit_tautology_proof(ProofBuilder& b, Frm A, LemmaStore* cache = nullptr);

namespace detail {

// lit_1 -> (lit_2 -> ... -> x)
inline Frm chain_frm(const std::vector<Frm>& prefix, Frm x) {
    for (auto it = prefix.rbegin(); it != prefix.rend(); ++it) x = fimp(*it, x);
    return x;
}

struct TruthCache {
    // (formula, valuation bits over its sorted variables) -> lemma name
    std::map<std::pair<Frm, uint64_t>, std::string> memo;
};

inline TruthCache& truth_cache_for(const DeductiveSystem& ds) {
    static std::map<std::string, TruthCache> caches;
    return caches[ds.name];
}

std::string ensure_truth_lemma(Frm f, const Valuation& val, const DeductiveSystem& ds,
                               LemmaStore& store);

struct CaseProver {
    HypProver& hp;
    Basis basis;
    const Valuation& val;
    const std::map<std::string, HypProver::Node>& lits;
    std::map<Frm, HypProver::Node> memo;

    std::string lname(const char* core_name, const char* ext_name) const {
        return basis == Basis::Core ? core_name : ext_name;
    }

    // Node proving f if eval(f), else ~f, compiled entirely in place.
    HypProver::Node prove(Frm f) {
        if (f->is_var()) return lits.at(f->var);
        if (auto it = memo.find(f); it != memo.end()) return it->second;
        HypProver::Node out = build(f);
        memo[f] = out;
        return out;
    }

    HypProver::Node build(Frm f) {
        bool tv = eval_formula(f, val);
        if (f->conn == "~") {
            Frm bsub = f->args[0];
            HypProver::Node nb = prove(bsub);
            if (tv) return nb;  // ~B true means B false: the child node is ~B already
            // B true: need ~~B
            return hp.mp(hp.thm_lemma(lname("l.dni", "x.dni"), Substitution({{"p", bsub}})), nb);
        }
        Frm bf = f->args[0], cf = f->args[1];
        bool vb = eval_formula(bf, val);
        Substitution spq({{"p", bf}, {"q", cf}});
        Substitution sab({{"a", bf}, {"b", cf}});
        if (f->conn == "->") {
            if (tv) {
                if (!vb)
                    return hp.mp(hp.thm_lemma(lname("l.efqi", "x.efqi"), spq), prove(bf));
                // C true: K-lift
                if (basis == Basis::Core)
                    return hp.mp(hp.thm_lemma("l.k", Substitution({{"p", cf}, {"q", bf}})),
                                 prove(cf));
                return hp.mp(hp.thm_axiom("k1", Substitution({{"a", cf}, {"b", bf}})),
                             prove(cf));
            }
            // B true, C false
            return hp.mp(hp.mp(hp.thm_lemma(lname("l.nimp", "x.nimp"), spq), prove(bf)),
                         prove(cf));
        }
        if (f->conn == "&") {
            if (tv)
                return hp.mp(hp.mp(hp.thm_axiom("k3", sab), prove(bf)), prove(cf));
            if (!vb) return hp.mp(hp.thm_lemma("x.nand1", spq), prove(bf));
            return hp.mp(hp.thm_lemma("x.nand2", spq), prove(cf));
        }
        if (f->conn == "|") {
            if (vb) return hp.mp(hp.thm_axiom("k5a", sab), prove(bf));
            if (tv) return hp.mp(hp.thm_axiom("k5b", sab), prove(cf));
            return hp.mp(hp.mp(hp.thm_lemma("x.nor", spq), prove(bf)), prove(cf));
        }
        if (f->conn == "<->") {
            bool vc = eval_formula(cf, val);
            const char* which = vb ? (vc ? "x.iff.tt" : "x.niff.tf")
                                   : (vc ? "x.niff.ft" : "x.iff.ff");
            return hp.mp(hp.mp(hp.thm_lemma(which, spq), prove(bf)), prove(cf));
        }
        throw SignatureError("connective outside calculus signature: " + f->conn);
    }
};

// Prefixed-chain composition: a case analysis is kept as a closed chain
//
//     lit_1 -> (lit_2 -> ... -> X)
//
// and chains are combined with one-time combinator lemmas instead of
// repeated deduction-theorem compilation:
//
//     S_k : (H -> (x->y)) -> ((H -> x) -> (H -> y))   modus ponens under H
//     B_k : (x -> y) -> ((H -> x) -> (H -> y))        closed application
//     I_d : (H -> r) -> (H -> (w -> r))               literal insertion
//
// where H abbreviates the prefix h1 -> (h2 -> ... -> hk -> _). Each
// combinator is itself a pure-implication tautology certified once per
// store through the inline prover and afterwards instantiated by one Sb
// step, so every use costs a handful of derivation steps.
struct ChainProver {
    ProofBuilder& b;
    const DeductiveSystem& ds;
    LemmaStore& store;
    Basis basis;

    std::string lname(const char* core_name, const char* ext_name) const {
        return basis == Basis::Core ? core_name : ext_name;
    }

    static std::vector<Frm> hvars(size_t k) {
        std::vector<Frm> hs;
        for (size_t i = 0; i < k; ++i) hs.push_back(fvar("h" + std::to_string(i + 1)));
        return hs;
    }

    // Closed instance of a combinator schema; certifies it on first use.
    size_t combinator(Frm schema, Substitution s) {
        std::string name = "cpc." + print_formula(schema);
        const LemmaStore::Entry* e = store.find(name);
        if (!e || !e->verified) {
            ProofBuilder pb(ds, store);
            emit_tautology_proof(pb, schema);  // inline path: no cache
            store.certify(name, ds, pb.d);
        }
        return b.lemma_sb(name, s);
    }

    static Substitution hbind(const std::vector<Frm>& pre, size_t k) {
        Substitution s;
        for (size_t i = 0; i < k; ++i) s.bindings["h" + std::to_string(i + 1)] = pre[i];
        return s;
    }

    // chain(pre, X->Y), chain(pre, X)  yields  chain(pre, Y)
    size_t ap(const std::vector<Frm>& pre, size_t u, size_t v) {
        if (pre.empty()) return b.mp_obj(u, v);
        Frm impl = b.frm_at(u);
        for (size_t i = 0; i < pre.size(); ++i) impl = impl->args[1];
        Frm x = fvar("x"), y = fvar("y");
        std::vector<Frm> hs = hvars(pre.size());
        Frm schema = fimp(chain_frm(hs, fimp(x, y)),
                          fimp(chain_frm(hs, x), chain_frm(hs, y)));
        Substitution s = hbind(pre, pre.size());
        s.bindings["x"] = impl->args[0];
        s.bindings["y"] = impl->args[1];
        return b.mp_obj(b.mp_obj(combinator(schema, s), u), v);
    }

    // closed X->Y at step t, chain(pre, X) at step v  yields  chain(pre, Y)
    size_t apply_under(const std::vector<Frm>& pre, size_t t, size_t v) {
        if (pre.empty()) return b.mp_obj(t, v);
        Frm xy = b.frm_at(t);
        Frm x = fvar("x"), y = fvar("y");
        std::vector<Frm> hs = hvars(pre.size());
        Frm schema = fimp(fimp(x, y), fimp(chain_frm(hs, x), chain_frm(hs, y)));
        Substitution s = hbind(pre, pre.size());
        s.bindings["x"] = xy->args[0];
        s.bindings["y"] = xy->args[1];
        return b.mp_obj(b.mp_obj(combinator(schema, s), t), v);
    }

    // chain(pre[0..d), R)  yields  chain(pre[0..d), L -> R)
    size_t insert_at(const std::vector<Frm>& pre, size_t d, Frm L, size_t u) {
        Frm r = b.frm_at(u);
        for (size_t i = 0; i < d; ++i) r = r->args[1];
        if (d == 0) {
            size_t k = basis == Basis::Core
                           ? b.lemma_sb("l.k", Substitution({{"p", r}, {"q", L}}))
                           : b.axiom_sb("k1", Substitution({{"a", r}, {"b", L}}));
            return b.mp_obj(k, u);
        }
        Frm w = fvar("w"), rv = fvar("r");
        std::vector<Frm> hs = hvars(d);
        Frm schema = fimp(chain_frm(hs, rv), chain_frm(hs, fimp(w, rv)));
        Substitution s = hbind(pre, d);
        s.bindings["w"] = L;
        s.bindings["r"] = r;
        return b.mp_obj(combinator(schema, s), u);
    }

    Frm lit(const std::string& v, const Valuation& val) const {
        return val.at(v) ? fvar(v) : fneg(fvar(v));
    }

    // Closed step proving  lit_1 -> (... -> f')  over the sorted variables
    // of f, where f' is f when val satisfies it and ~f otherwise.
    size_t emit(Frm f, const Valuation& val) {
        std::set<std::string> vset = vars_of(f);
        std::vector<std::string> vs(vset.begin(), vset.end());
        std::vector<Frm> pre;
        for (const std::string& v : vs) pre.push_back(lit(v, val));
        if (f->is_var())
            return b.lemma_sb(lname("l.id", "x.id"), Substitution({{"p", pre[0]}}));
        bool tv = eval_formula(f, val);
        if (f->conn == "~") {
            Frm bsub = f->args[0];
            size_t cb = child(bsub, val, vs, pre);
            if (tv) return cb;  // ~B true means B false: the child chain ends in ~B = f
            size_t t = b.lemma_sb(lname("l.dni", "x.dni"), Substitution({{"p", bsub}}));
            return apply_under(pre, t, cb);
        }
        Frm bf = f->args[0], cf = f->args[1];
        bool vb = eval_formula(bf, val);
        Substitution spq({{"p", bf}, {"q", cf}});
        Substitution sab({{"a", bf}, {"b", cf}});
        if (f->conn == "->") {
            if (tv) {
                if (!vb)
                    return apply_under(pre, b.lemma_sb(lname("l.efqi", "x.efqi"), spq),
                                       child(bf, val, vs, pre));
                size_t t = basis == Basis::Core
                               ? b.lemma_sb("l.k", Substitution({{"p", cf}, {"q", bf}}))
                               : b.axiom_sb("k1", Substitution({{"a", cf}, {"b", bf}}));
                return apply_under(pre, t, child(cf, val, vs, pre));
            }
            size_t u = apply_under(pre, b.lemma_sb(lname("l.nimp", "x.nimp"), spq),
                                   child(bf, val, vs, pre));
            return ap(pre, u, child(cf, val, vs, pre));
        }
        if (f->conn == "&") {
            if (tv) {
                size_t u = apply_under(pre, b.axiom_sb("k3", sab), child(bf, val, vs, pre));
                return ap(pre, u, child(cf, val, vs, pre));
            }
            if (!vb)
                return apply_under(pre, b.lemma_sb("x.nand1", spq), child(bf, val, vs, pre));
            return apply_under(pre, b.lemma_sb("x.nand2", spq), child(cf, val, vs, pre));
        }
        if (f->conn == "|") {
            if (vb) return apply_under(pre, b.axiom_sb("k5a", sab), child(bf, val, vs, pre));
            if (tv) return apply_under(pre, b.axiom_sb("k5b", sab), child(cf, val, vs, pre));
            size_t u = apply_under(pre, b.lemma_sb("x.nor", spq), child(bf, val, vs, pre));
            return ap(pre, u, child(cf, val, vs, pre));
        }
        if (f->conn == "<->") {
            bool vc = eval_formula(cf, val);
            const char* which = vb ? (vc ? "x.iff.tt" : "x.niff.tf")
                                   : (vc ? "x.niff.ft" : "x.iff.ff");
            size_t u = apply_under(pre, b.lemma_sb(which, spq), child(bf, val, vs, pre));
            return ap(pre, u, child(cf, val, vs, pre));
        }
        throw SignatureError("connective outside calculus signature: " + f->conn);
    }

    // Closed step proving chain(pre, c') for an immediate subformula c: the
    // truth lemma of c gives a chain over the variables of c, and missing
    // parent literals are inserted with I_d at the right depths.
    size_t child(Frm c, const Valuation& val, const std::vector<std::string>& pvs,
                 const std::vector<Frm>& pre) {
        std::set<std::string> cvs;
        size_t base;
        if (c->is_var()) {
            cvs.insert(c->var);
            base = b.lemma_sb(lname("l.id", "x.id"), Substitution({{"p", lit(c->var, val)}}));
        } else {
            cvs = vars_of(c);
            base = b.lemma(ensure_truth_lemma(c, val, ds, store));
        }
        size_t d = 0;
        for (const std::string& v : pvs) {
            if (!cvs.count(v)) base = insert_at(pre, d, lit(v, val), base);
            ++d;
        }
        return base;
    }
};

inline std::string ensure_truth_lemma(Frm f, const Valuation& val,
                                      const DeductiveSystem& ds, LemmaStore& store) {
    std::set<std::string> vset = vars_of(f);
    std::vector<std::string> vs(vset.begin(), vset.end());
    uint64_t bits = 0;
    std::string bstr;
    for (size_t i = 0; i < vs.size(); ++i) {
        bool tv = val.at(vs[i]);
        if (tv) bits |= uint64_t(1) << i;
        bstr += tv ? '1' : '0';
    }
    TruthCache& tc = truth_cache_for(ds);
    auto key = std::make_pair(f, bits);
    if (auto it = tc.memo.find(key); it != tc.memo.end()) return it->second;

    Valuation sub;
    for (const std::string& v : vs) sub[v] = val.at(v);
    ProofBuilder b(ds, store);
    ChainProver cp{b, ds, store, basis_of(ds)};
    size_t res = cp.emit(f, sub);
    // the builder dedups statements, so the chain may resolve to an earlier
    // step; repeat it so the derivation ends in its conclusion
    if (res + 1 != b.d.steps.size()) b.d.steps.push_back(b.d.steps[res]);
    std::string name = "kal." + bstr + "." + print_formula(f);
    store.certify(name, ds, b.d);
    tc.memo[key] = name;
    return name;
}

}  // namespace detail

// Proves +A for a two-valued tautology A, appending to the given builder and
// returning the step index carrying +A. When `cache` is given (it must be
// the store the builder checks against), the case analysis is composed from
// certified truth lemmas of the immediate subformulas via prefixed chains;
// without a cache the whole analysis is compiled in place through the
// deduction theorem.
inline size_t emit_tautology_proof(ProofBuilder& b, Frm A, LemmaStore* cache) {
    Basis basis = basis_of(b.ds);
    if (basis == Basis::Core && !well_formed(A, arrow_neg_signature()))
        throw SignatureError("lukasiewicz_core covers only {->,~}");
    if (!well_formed(A, b.ds.signature))
        throw SignatureError("formula outside the calculus signature");
    if (auto v = falsifying_valuation(A)) throw NotATautology(*v);

    std::set<std::string> vset = vars_of(A);
    std::vector<std::string> vs(vset.begin(), vset.end());
    const std::string cases = basis == Basis::Core ? "l.cases" : "x.cases";
    auto lit = [&](size_t i, bool tv) {
        Frm v = fvar(vs[i]);
        return tv ? v : fneg(v);
    };

    if (cache) {
        detail::ChainProver cp{b, b.ds, *cache, basis};
        // rec(prefix) returns a closed step proving
        //   lit(v1) -> (lit(v2) -> ... (lit(vj) -> A))
        // where j = prefix length and lit is v or ~v per the prefix bits.
        std::function<size_t(std::vector<bool>&)> rec =
            [&](std::vector<bool>& prefix) -> size_t {
            size_t j = prefix.size();
            if (j == vs.size()) {
                Valuation val;
                for (size_t i = 0; i < j; ++i) val[vs[i]] = prefix[i];
                return cp.emit(A, val);
            }
            prefix.push_back(true);
            size_t s1 = rec(prefix);
            prefix.back() = false;
            size_t s0 = rec(prefix);
            prefix.pop_back();
            std::vector<Frm> pre;
            for (size_t i = 0; i < j; ++i) pre.push_back(lit(i, prefix[i]));
            size_t cs = b.lemma_sb(cases, Substitution({{"p", fvar(vs[j])}, {"q", A}}));
            return cp.ap(pre, cp.apply_under(pre, cs, s1), s0);
        };
        std::vector<bool> prefix;
        return rec(prefix);
    }

    std::function<size_t(std::vector<bool>&)> rec = [&](std::vector<bool>& prefix) -> size_t {
        size_t j = prefix.size();
        if (j == vs.size()) {
            Valuation val;
            for (size_t i = 0; i < j; ++i) val[vs[i]] = prefix[i];
            HypProver hp(b, basis);
            std::map<std::string, HypProver::Node> lits;
            for (size_t i = 0; i < j; ++i) lits[vs[i]] = hp.assume(lit(i, prefix[i]));
            detail::CaseProver cp{hp, basis, val, lits, {}};
            return hp.close(cp.prove(A));
        }
        prefix.push_back(true);
        size_t s1 = rec(prefix);
        prefix.back() = false;
        size_t s0 = rec(prefix);
        prefix.pop_back();
        Frm v = fvar(vs[j]);
        HypProver hp(b, basis);
        auto t1 = hp.step(s1);
        auto t0 = hp.step(s0);
        for (size_t i = 0; i < j; ++i) {
            auto h = hp.assume(lit(i, prefix[i]));
            t1 = hp.mp(t1, h);
            t0 = hp.mp(t0, h);
        }
        auto cs = hp.thm_lemma(cases, Substitution({{"p", v}, {"q", A}}));
        return hp.close(hp.mp(hp.mp(cs, t1), t0));
    };
    std::vector<bool> prefix;
    return rec(prefix);
}

inline Derivation prove_tautology(Frm A, const DeductiveSystem& ds) {
    ProofBuilder b(ds, lemmas_for(ds));
    size_t res = emit_tautology_proof(b, A, &lemmas_for(ds));
    // make sure the derivation ends in +A even if the final step deduped
    if (res + 1 != b.d.steps.size()) b.d.steps.push_back(b.d.steps[res]);
    Verdict v = check_derivation(ds, b.d, lemmas_for(ds));
    if (!v.accepted)
        throw std::logic_error("internal: tautology certificate failed at step " +
                               std::to_string(v.step) + " (" + v.reason + ")");
    return b.d;
}

// ---------------------------------------------------------------------------
// Refutation: falsifying valuation -> closed substitution -> MT + RS

inline Derivation refute(Frm A, const DeductiveSystem& ds) {
    Basis basis = basis_of(ds);
    if (basis == Basis::Core && !well_formed(A, arrow_neg_signature()))
        throw SignatureError("lukasiewicz_core covers only {->,~}");
    if (!well_formed(A, ds.signature))
        throw SignatureError("formula outside the calculus signature");
    if (!ds.axiom("anti")) throw std::invalid_argument("system has no anti-axiom");
    if (!ds.allow_rs) throw std::invalid_argument("system does not admit RS");
    auto fv = falsifying_valuation(A);
    if (!fv) throw IsATautology(prove_tautology(A, ds));

    ProofBuilder b(ds, lemmas_for(ds));
    Frm p = fvar("p");
    if (A->is_var()) {
        // -p is the anti-axiom itself; other variables via one RS step
        size_t anti = b.axiom("anti");
        if (A->var != "p")
            b.rs(anti, Substitution({{A->var, p}}), Statement::atom(false, A));
    } else {
        // Truth chain for A under the falsifying valuation:
        //   +(lit_1 -> (... -> ~A)).
        // Substituting p->p for true variables and ~(p->p) for false ones
        // turns every literal into a closed theorem; stripping them leaves
        // +~sigma(A), which yields +(sigma(A) -> p) by ex falso, then -A by
        // MT against the anti-axiom and one RS step.
        LemmaStore& store = lemmas_for(ds);
        detail::ChainProver cp{b, ds, store, basis};
        size_t chain = cp.emit(A, *fv);
        Frm t = fimp(p, p);
        Frm f = fneg(t);
        Substitution sigma;
        for (auto& [var, tv] : *fv) sigma.bindings[var] = tv ? t : f;
        Frm sA = apply_subst(sigma, A);
        size_t inst = b.sb(chain, sigma);
        size_t top = b.lemma(basis == Basis::Core ? "l.id" : "x.id");  // +(p->p)
        std::optional<size_t> ntop;  // +~~(p->p), built on demand
        for (const std::string& v : vars_of(A)) {
            if (fv->at(v)) {
                inst = b.mp_obj(inst, top);
            } else {
                if (!ntop) {
                    size_t dni = b.lemma_sb(basis == Basis::Core ? "l.dni" : "x.dni",
                                            Substitution({{"p", t}}));
                    ntop = b.mp_obj(dni, top);
                }
                inst = b.mp_obj(inst, *ntop);
            }
        }
        size_t ef = b.lemma_sb(basis == Basis::Core ? "l.efqi" : "x.efqi",
                               Substitution({{"p", sA}, {"q", p}}));
        size_t imp = b.mp_obj(ef, inst);  // +(sigma(A) -> p)
        size_t anti = b.axiom("anti");
        size_t mt = apply_rule_macro(b.ds, b.d, "MT",
                                     Substitution({{"X", sA}, {"Y", p}}), {anti, imp});
        b.rs(mt, sigma, Statement::atom(false, A));
    }
    Verdict v = check_derivation(ds, b.d, lemmas_for(ds));
    if (!v.accepted)
        throw std::logic_error("internal: refutation certificate failed at step " +
                               std::to_string(v.step) + " (" + v.reason + ")");
    return b.d;
}

// ---------------------------------------------------------------------------
// Decision procedure

struct Certificate {
    bool asserted;  // true: derivation ends +A; false: ends -A
    Frm formula;
    Derivation derivation;
};

inline Certificate decide(Frm A, const DeductiveSystem& ds) {
    if (falsifying_valuation(A))
        return {false, A, refute(A, ds)};
    return {true, A, prove_tautology(A, ds)};
}

// ---------------------------------------------------------------------------
// Indirect (C-style) refutation: from the premise +A derive +p, the body of
// the anti-axiom. Pattern: +A premise; Sb by the closed falsifying
// substitution; the tautology (sigma(A) -> p) as a certified lemma; MP.

inline std::optional<Derivation> c_refute(Frm A, const DeductiveSystem& ds,
                                          size_t budget = 10000) {
    Basis basis = basis_of(ds);
    if (basis == Basis::Core && !well_formed(A, arrow_neg_signature()))
        throw SignatureError("lukasiewicz_core covers only {->,~}");
    auto fv = falsifying_valuation(A);
    if (!fv) return std::nullopt;  // tautology: not C-refutable in a coherent system

    LemmaStore& store = lemmas_for(ds);
    ProofBuilder b(ds, store);
    Frm p = fvar("p");
    size_t prem = b.premise(Statement::asserted(A));
    if (A->is_var() && A->var == "p") {
        // the premise is already +p
    } else {
        Frm t = fimp(p, p);
        Frm f = fneg(t);
        Substitution sigma;
        for (auto& [var, tv] : *fv) sigma.bindings[var] = tv ? t : f;
        Frm sA = apply_subst(sigma, A);
        size_t inst = b.sb(prem, sigma);
        Frm goal = fimp(sA, p);
        std::string lemma_name = "cpc." + print_formula(goal);
        if (!store.find(lemma_name))
            store.certify(lemma_name, ds, prove_tautology(goal, ds));
        size_t lm = b.lemma(lemma_name);
        b.mp_obj(lm, inst);
        (void)inst;
    }
    if (b.d.steps.size() > budget) return std::nullopt;
    Verdict v = check_derivation(ds, b.d, store);
    if (!v.accepted)
        throw std::logic_error("internal: c-refutation failed at step " +
                               std::to_string(v.step) + " (" + v.reason + ")");
    return b.d;
}

// ---------------------------------------------------------------------------
// Smiley trivialization: in smiley + anti-axiom every formula is rejected.

inline Derivation smiley_trivialize(Frm A) {
    const DeductiveSystem& ds = smiley_with_anti();
    ProofBuilder b(ds, lemmas_for(ds));
    Frm p = fvar("p");
    size_t anti = b.axiom("anti");  // -p
    size_t np = apply_rule_macro(ds, b.d, "r1", Substitution({{"X", p}}), {anti});
    size_t nA = np;
    if (A != p) {
        Stm want = Statement::asserted(fneg(A));
        nA = b.d.steps.size();
        b.d.steps.push_back({want, JSb{np, Substitution({{"p", A}})}});
    }
    apply_rule_macro(ds, b.d, "r2", Substitution({{"X", A}}), {nA});
    Verdict v = check_derivation(ds, b.d, lemmas_for(ds));
    if (!v.accepted)
        throw std::logic_error("internal: smiley trivialization failed at step " +
                               std::to_string(v.step) + " (" + v.reason + ")");
    return b.d;
}

}  // namespace mlk
