#pragma once

// Hilbert-level proof construction machinery for the built-in calculi:
//
//  * ProofBuilder — appends checkable steps (axioms, lemmas, Sb, rule macros)
//    to a derivation, deduplicating repeated statements.
//  * the bootstrap table — a fixed condensed-detachment derivation of the
//    auxiliary theses (identity, K, ex-falso-for-implication, and the
//    negated-implication thesis ~(p->q) -> p) from the three assertion
//    axioms of the core calculus; every step is replayed as Sb + Sb + MP and
//    verified by the checker when the lemma store is seeded.
//  * HypProver — a deduction-theorem compiler: hypothetical proofs built
//    from assumptions, theorems and object-level MP are discharged into
//    ordinary Hilbert steps. Substitution is never applied to a statement
//    depending on a hypothesis, so compiled derivations remain premise-sound.
//
// The same compiler serves both axiom bases: the core {->,~} calculus closes
// implications through the syllogism axiom plus the contraction chain, the
// extended calculus through its object-level K1/K2 axioms.

#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "deduction.hpp"

namespace mlk {

// ---------------------------------------------------------------------------
// ProofBuilder

class ProofBuilder {
public:
    const DeductiveSystem& ds;
    const LemmaStore& lemmas;
    Derivation d;

    ProofBuilder(const DeductiveSystem& system, const LemmaStore& store)
        : ds(system), lemmas(store) {}

    size_t add(Stm s, Justification j) {
        auto it = index_.find(s);
        if (it != index_.end()) return it->second;
        d.steps.push_back({s, std::move(j)});
        index_[s] = d.steps.size() - 1;
        return d.steps.size() - 1;
    }

    size_t axiom(const std::string& id) {
        Stm s = ds.axiom(id);
        if (!s) throw std::invalid_argument("unknown axiom: " + id);
        return add(s, JAxiom{id});
    }
    size_t lemma(const std::string& name) {
        const LemmaStore::Entry* e = lemmas.find(name);
        if (!e || !e->verified) throw std::invalid_argument("unusable lemma: " + name);
        return add(e->stm, JLemma{name});
    }
    size_t premise(Stm s) {
        bool known = false;
        for (Stm p : d.premises) known = known || p == s;
        if (!known) d.premises.push_back(s);
        return add(s, JPremise{});
    }

    // alpha => alpha from K1/K2 (the meta-level SKK derivation)
    size_t self_mimpl(Stm a) {
        Stm aa = Statement::mimpl(a, a);
        size_t k1a = meta("K1", MetaBinding{{"a", a}, {"b", a}});
        size_t k1b = meta("K1", MetaBinding{{"a", a}, {"b", aa}});
        size_t k2 = meta("K2", MetaBinding{{"a", a}, {"b", aa}, {"c", a}});
        return mmp(mmp(k2, k1a), k1b);
    }
    // bare TOP via AxTop on TOP => TOP
    size_t top() {
        Stm t = Statement::mtop();
        size_t tt = self_mimpl(t);
        size_t ax = meta("AxTop", MetaBinding{{"a", t}});
        return mmp(ax, tt);
    }
    size_t sb(size_t ref, const Substitution& s) {
        Stm out = subst_statement(s, d.steps[ref].stm);
        if (out == d.steps[ref].stm) return ref;
        return add(out, JSb{ref, s});
    }
    size_t rs(size_t ref, const Substitution& s, Stm generalized) {
        return add(generalized, JRS{ref, s});
    }
    size_t mmp(size_t major, size_t minor) {
        Stm m = d.steps[major].stm;
        if (m->kind != SKind::MImpl || m->a != d.steps[minor].stm)
            throw std::invalid_argument("mmp shape mismatch");
        return add(m->b, JMMP{major, minor});
    }
    size_t meta(const std::string& id, const MetaBinding& bind) {
        return add(meta_axiom_instance(id, bind), JMetaAxiom{id, bind});
    }

    // Convenience: axiom or lemma followed by a substitution instance.
    size_t axiom_sb(const std::string& id, const Substitution& s) {
        return sb(axiom(id), s);
    }
    size_t lemma_sb(const std::string& name, const Substitution& s) {
        return sb(lemma(name), s);
    }

    // Object-level modus ponens via the rule application macro. The major
    // step carries +(X -> Y), the minor +X; returns the step carrying +Y.
    size_t mp_obj(size_t major, size_t minor) {
        Stm mj = d.steps[major].stm;
        if (!mj->is_atom() || !mj->sign || mj->body->is_var() || mj->body->conn != "->")
            throw std::invalid_argument("mp_obj: major is not an asserted implication");
        Substitution bind(
            {{"X", mj->body->args[0]}, {"Y", mj->body->args[1]}});
        size_t out = apply_rule_macro(ds, d, "MP", bind, {minor, major});
        index_[d.steps[out].stm] = out;
        return out;
    }

    Stm stm_at(size_t i) const { return d.steps[i].stm; }
    Frm frm_at(size_t i) const {
        Stm s = d.steps[i].stm;
        if (!s->is_atom()) throw std::invalid_argument("not an atomic step");
        return s->body;
    }

private:
    std::map<Stm, size_t> index_;
};

// ---------------------------------------------------------------------------
// Bootstrap table for the core calculus.
//
// Condensed-detachment derivation of the auxiliary theses from the axioms
//   A1: (p->q) -> ((q->r) -> (p->r))
//   A2: (~p->p) -> p
//   A3: p -> (~p->q)
// Each row instantiates the named earlier rows by the given substitutions
// and detaches. Rows of interest: m5 = p->p, m20 = p->(q->p),
// m26 = ~p->(p->q).

namespace detail {

struct BootRow {
    const char* name;
    const char* result;   // for documentation and cross-checking
    const char* major;
    const char* major_sub;
    const char* minor;
    const char* minor_sub;
};

inline const std::vector<BootRow>& boot_rows() {
    static const std::vector<BootRow> rows = {
        {"m1", "(p -> q) -> ((~p -> p) -> q)", "A1", "p:=(~p -> p); q:=p; r:=q", "A2", ""},
        {"m2", "(~(p -> q) -> (p -> q)) -> ((q -> r) -> (p -> r))", "m1",
         "p:=(p -> q); q:=((q -> r) -> (p -> r))", "A1", ""},
        {"m3", "((p -> q) -> (r -> q)) -> ((r -> p) -> s) -> ((r -> p) -> s)",
         "A1", "p:=(r -> p); q:=((p -> q) -> (r -> q)); r:=s", "A1", "p:=r; q:=p; r:=q"},
        {"m4", "((~p -> q) -> r) -> (p -> r)", "A1", "q:=(~p -> q)", "A3", ""},
        {"m5", "p -> p", "m4", "q:=p; r:=p", "A2", ""},
        {"m6", "~(p -> p) -> q", "A3", "p:=(p -> p)", "m5", ""},
        {"m7", "(p -> q) -> (~(r -> r) -> q)", "A1", "p:=~(r -> r); q:=p; r:=q", "m6",
         "p:=r; q:=p"},
        {"m8", "p -> (~(q -> q) -> r)", "m4", "q:=r; r:=(~(q -> q) -> r)", "m7",
         "p:=~p; q:=r; r:=q"},
        {"m9", "((~(p -> p) -> q) -> r) -> (s -> r)", "A1", "p:=s; q:=(~(p -> p) -> q)",
         "m8", "p:=s; q:=p; r:=q"},
        {"m10", "p -> (q -> q)", "m9", "p:=q; q:=(q -> q); r:=(q -> q); s:=p", "A2",
         "p:=(q -> q)"},
        {"m11", "((p -> p) -> q) -> (r -> q)", "A1", "p:=r; q:=(p -> p); r:=q", "m10",
         "p:=r; q:=p"},
        {"m12", "p -> ((~q -> q) -> q)", "m11", "p:=q; q:=((~q -> q) -> q); r:=p", "m1",
         "p:=q"},
        {"m13", "(((~p -> p) -> p) -> q) -> (r -> q)", "A1",
         "p:=r; q:=((~p -> p) -> p); r:=q", "m12", "p:=r; q:=p"},
        {"m14", "(p -> (~q -> q)) -> (r -> (p -> q))", "m3",
         "p:=(~q -> q); r:=p; s:=(r -> (p -> q))", "m13", "p:=q; q:=(p -> q)"},
        {"m15", "(p -> q) -> (r -> (p -> q))", "m3", "p:=q; r:=p; s:=(r -> (p -> q))",
         "m11", "p:=q; q:=(p -> q)"},
        {"m16", "p -> (q -> (~p -> r))", "m4", "q:=r; r:=(q -> (~p -> r))", "m15",
         "p:=~p; q:=r; r:=q"},
        {"m17", "((p -> (~q -> r)) -> s) -> (q -> s)", "A1",
         "p:=q; q:=(p -> (~q -> r)); r:=s", "m16", "p:=q; q:=p"},
        {"m18", "p -> (q -> (r -> p))", "m17", "p:=r; q:=p; r:=p; s:=(q -> (r -> p))",
         "m14", "p:=r; q:=p; r:=q"},
        {"m19", "p -> (q -> (r -> q))", "m14", "p:=q; q:=(r -> q); r:=p", "m18",
         "p:=q; q:=~(r -> q)"},
        {"m20", "p -> (q -> p)", "m19", "p:=((~r -> r) -> r); q:=p; r:=q", "A2", "p:=r"},
        {"m21", "((p -> q) -> r) -> (q -> r)", "m2", "p:=q; q:=(p -> q)", "m19",
         "p:=~(q -> (p -> q)); r:=p"},
        {"m22", "(~p -> q) -> (r -> ((q -> p) -> p))", "m3",
         "p:=q; q:=p; r:=~p; s:=(r -> ((q -> p) -> p))", "m14", "p:=(q -> p); q:=p"},
        {"m23", "p -> (q -> ((p -> r) -> r))", "m21",
         "p:=~r; q:=p; r:=(q -> ((p -> r) -> r))", "m22", "p:=r; q:=p; r:=q"},
        {"m24", "p -> (q -> ((q -> r) -> r))", "m14", "p:=q; q:=((q -> r) -> r); r:=p",
         "m23", "p:=q; q:=~((q -> r) -> r)"},
        {"m25", "(((p -> q) -> q) -> r) -> (p -> r)", "m2", "q:=((p -> q) -> q)", "m24",
         "p:=~(p -> ((p -> q) -> q)); q:=p; r:=q"},
        {"m26", "~p -> (p -> q)", "m25", "p:=~p; r:=(p -> q)", "m4", "r:=q"},
    };
    return rows;
}

inline Substitution parse_sub(const std::string& src) {
    Substitution s;
    size_t i = 0;
    while (i < src.size()) {
        while (i < src.size() && (src[i] == ' ' || src[i] == ';')) ++i;
        if (i >= src.size()) break;
        size_t j = i;
        while (j < src.size() && src[j] != ':') ++j;
        std::string var = src.substr(i, j - i);
        i = j + 2;  // skip ":="
        detail::FormulaParser p(src, i);
        Frm f = p.parse();
        i = p.pos();
        s.bindings[var] = f;
    }
    return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// HypProver: hypothetical proofs discharged through the deduction theorem.

enum class Basis { Core, Extended };

class HypProver {
public:
    HypProver(ProofBuilder& b, Basis basis) : b_(b), basis_(basis) {}

    using Node = size_t;

    // Introduces a hypothesis (LIFO discipline: discharge order is the
    // reverse of assumption order).
    Node assume(Frm f) {
        nodes_.push_back({f, false, 0, true, 0, 0});
        hyps_.push_back(nodes_.size() - 1);
        return nodes_.size() - 1;
    }

    // Wraps an already-derived builder step +F as a closed node.
    Node step(size_t builder_step) {
        Frm f = b_.frm_at(builder_step);
        nodes_.push_back({f, true, builder_step, false, 0, 0});
        return nodes_.size() - 1;
    }
    Node thm_axiom(const std::string& id, const Substitution& s = {}) {
        return step(b_.axiom_sb(id, s));
    }
    Node thm_lemma(const std::string& name, const Substitution& s = {}) {
        return step(b_.lemma_sb(name, s));
    }

    // Object modus ponens: major proves X->Y, minor proves X.
    Node mp(Node major, Node minor) {
        const HP& mj = nodes_[major];
        const HP& mn = nodes_[minor];
        if (mj.f->is_var() || mj.f->conn != "->" || mj.f->args[0] != mn.f)
            throw std::invalid_argument("HypProver::mp shape mismatch");
        Frm out = mj.f->args[1];
        if (mj.closed && mn.closed) {
            size_t st = b_.mp_obj(mj.step, mn.step);
            nodes_.push_back({out, true, st, false, 0, 0});
        } else {
            nodes_.push_back({out, false, 0, false, major, minor});
        }
        return nodes_.size() - 1;
    }

    Frm formula(Node n) const { return nodes_[n].f; }

    // Discharges all outstanding hypotheses around the goal and returns the
    // builder step proving (h1 -> (h2 -> ... -> goal)).
    size_t close(Node goal) {
        while (!hyps_.empty()) {
            Node h = hyps_.back();
            hyps_.pop_back();
            memo_.clear();
            dep_memo_.clear();
            goal = discharge(goal, h);
        }
        if (!nodes_[goal].closed) throw std::logic_error("HypProver: goal still open");
        return nodes_[goal].step;
    }

private:
    struct HP {
        Frm f;
        bool closed;
        size_t step;  // valid when closed
        bool is_hyp;
        Node l, r;    // pending MP children
    };

    ProofBuilder& b_;
    Basis basis_;
    std::vector<HP> nodes_;
    std::vector<Node> hyps_;
    std::map<Node, Node> memo_;
    std::map<Node, bool> dep_memo_;

    Node mk_closed(size_t st) {
        nodes_.push_back({b_.frm_at(st), true, st, false, 0, 0});
        return nodes_.size() - 1;
    }

    // K-style lift of a node not depending on h: from F derive h -> F.
    Node lift(Node n, Frm h) {
        Frm f = nodes_[n].f;
        Node k;
        if (basis_ == Basis::Core)
            k = mk_closed(b_.lemma_sb("l.k", Substitution({{"p", f}, {"q", h}})));
        else
            k = mk_closed(b_.axiom_sb("k1", Substitution({{"a", f}, {"b", h}})));
        return mp(k, n);
    }

    Node self_impl(Frm h) {
        if (basis_ == Basis::Core)
            return mk_closed(b_.lemma_sb("l.id", Substitution({{"p", h}})));
        return mk_closed(b_.lemma_sb("x.id", Substitution({{"p", h}})));
    }

    bool depends(Node n, Node h) {
        if (n == h) return true;
        const HP& nd = nodes_[n];
        if (nd.closed || nd.is_hyp) return false;
        if (auto it = dep_memo_.find(n); it != dep_memo_.end()) return it->second;
        bool d = depends(nd.l, h) || depends(nd.r, h);
        dep_memo_[n] = d;
        return d;
    }

    Node discharge(Node n, Node h) {
        if (auto it = memo_.find(n); it != memo_.end()) return it->second;
        Frm hf = nodes_[h].f;
        Node out;
        if (n == h) {
            out = self_impl(hf);
        } else if (!depends(n, h)) {
            out = lift(n, hf);
        } else {
            // pending MP both or one side depending on h
            Node dmaj = discharge(nodes_[n].l, h);  // proves h -> (x -> y)
            Node dmin = discharge(nodes_[n].r, h);  // proves h -> x
            Frm x = nodes_[nodes_[n].r].f;
            Frm y = nodes_[n].f;
            if (basis_ == Basis::Extended) {
                // object K2: (h->x) -> ((h->(x->y)) -> (h->y))
                Node s = mk_closed(b_.axiom_sb(
                    "k2", Substitution({{"a", hf}, {"b", x}, {"c", y}})));
                out = mp(mp(s, dmin), dmaj);
            } else {
                // syllogism chain + contraction through ~(h->y) -> h
                Frm hy = fimp(hf, y);
                Node s1 = mk_closed(b_.axiom_sb(
                    "A1", Substitution({{"p", hf}, {"q", x}, {"r", y}})));
                Node e1 = mp(s1, dmin);  // (x->y) -> (h->y)
                Node s2 = mk_closed(b_.axiom_sb(
                    "A1", Substitution({{"p", hf}, {"q", fimp(x, y)}, {"r", hy}})));
                Node e3 = mp(mp(s2, dmaj), e1);  // h -> (h->y)
                Node k1 = mk_closed(b_.axiom_sb(
                    "A1", Substitution({{"p", fneg(hy)}, {"q", hf}, {"r", hy}})));
                Node k2 = mk_closed(
                    b_.lemma_sb("l.ta", Substitution({{"p", hf}, {"q", y}})));
                Node e5 = mp(mp(k1, k2), e3);  // ~(h->y) -> (h->y)
                Node k3 = mk_closed(b_.axiom_sb("A2", Substitution({{"p", hy}})));
                out = mp(k3, e5);
            }
        }
        memo_[n] = out;
        return out;
    }
};

// ---------------------------------------------------------------------------
// Lemma bootstrap.
//
// Seeds the lemma store of a core-basis system with the condensed-detachment
// theses and the derived schema lemmas used by the tautology prover. Every
// lemma is certified through the checker; a failure throws.

inline void bootstrap_core_lemmas(const DeductiveSystem& core, LemmaStore& store) {
    if (store.find("l.cases")) return;  // already seeded

    // 1. replay the detachment table; each row becomes its own lemma
    auto row_lemma = [](const std::string& name) { return "cd." + name; };
    for (auto& row : detail::boot_rows()) {
        ProofBuilder b(core, store);
        auto source = [&](const char* ref) -> size_t {
            std::string r(ref);
            if (r == "A1" || r == "A2" || r == "A3") return b.axiom(r);
            return b.lemma(row_lemma(r));
        };
        size_t maj = b.sb(source(row.major), detail::parse_sub(row.major_sub));
        size_t min = b.sb(source(row.minor), detail::parse_sub(row.minor_sub));
        b.mp_obj(maj, min);
        store.certify(row_lemma(row.name), core, b.d);
    }

    // friendly aliases for the theses the provers use
    auto alias = [&](const char* name, const char* row) {
        ProofBuilder b(core, store);
        b.lemma(row_lemma(row));
        store.certify(name, core, b.d);
    };
    alias("l.id", "m5");     // p -> p
    alias("l.k", "m20");     // p -> (q -> p)
    alias("l.efqi", "m26");  // ~p -> (p -> q)

    Frm p = fvar("p"), q = fvar("q");

    // 2. l.ta: ~(p->q) -> p, by syllogisms from l.efqi, A1, A2
    {
        ProofBuilder b(core, store);
        Frm cpq = fimp(p, q);
        size_t x1 = b.lemma_sb("l.efqi", Substitution({{"p", cpq}, {"q", p}}));
        size_t x2 = b.lemma("l.efqi");  // ~p -> (p->q)
        size_t s1 = b.axiom_sb("A1", Substitution({{"p", fneg(p)}, {"q", cpq}, {"r", p}}));
        size_t e1 = b.mp_obj(s1, x2);  // ((p->q)->p) -> (~p->p)
        size_t s2 = b.axiom_sb(
            "A1", Substitution({{"p", fneg(cpq)}, {"q", fimp(cpq, p)}, {"r", fimp(fneg(p), p)}}));
        size_t e3 = b.mp_obj(b.mp_obj(s2, x1), e1);  // ~(p->q) -> (~p->p)
        size_t s3 = b.axiom_sb(
            "A1", Substitution({{"p", fneg(cpq)}, {"q", fimp(fneg(p), p)}, {"r", p}}));
        size_t e4 = b.mp_obj(s3, e3);
        b.mp_obj(e4, b.axiom("A2"));  // ~(p->q) -> p
        store.certify("l.ta", core, b.d);
    }

    // 3. schema lemmas via the deduction theorem
    // l.dne: ~~p -> p
    {
        ProofBuilder b(core, store);
        HypProver hp(b, Basis::Core);
        auto nnp = hp.assume(fneg(fneg(p)));
        auto t = hp.thm_lemma("l.efqi", Substitution({{"p", fneg(p)}, {"q", p}}));
        auto cnpp = hp.mp(t, nnp);  // ~p -> p
        auto a2 = hp.thm_axiom("A2");
        hp.close(hp.mp(a2, cnpp));
        store.certify("l.dne", core, b.d);
    }
    // l.dni: p -> ~~p. Two stages: first p -> (~~~p -> ~~p), then detach the
    // inner antecedent through A2 under the remaining hypothesis.
    {
        ProofBuilder b(core, store);
        HypProver hp(b, Basis::Core);
        auto A = hp.assume(p);
        auto B = hp.assume(fneg(fneg(fneg(p))));
        auto dne = hp.thm_lemma("l.dne", Substitution({{"p", fneg(p)}}));
        auto np = hp.mp(dne, B);
        auto ef = hp.thm_lemma("l.efqi", Substitution({{"q", fneg(fneg(p))}}));
        auto r = hp.mp(hp.mp(ef, np), A);  // ~~p under [p, ~~~p]
        size_t both = hp.close(r);         // p -> (~~~p -> ~~p)
        HypProver hp2(b, Basis::Core);
        auto A2h = hp2.assume(p);
        auto c1 = hp2.mp(hp2.step(both), A2h);  // ~~~p -> ~~p
        auto a2 = hp2.thm_axiom("A2", Substitution({{"p", fneg(fneg(p))}}));
        hp2.close(hp2.mp(a2, c1));
        store.certify("l.dni", core, b.d);
    }
    // l.contra: (~q -> ~p) -> (p -> q)
    {
        ProofBuilder b(core, store);
        HypProver hp(b, Basis::Core);
        auto h1 = hp.assume(fimp(fneg(q), fneg(p)));
        auto h2 = hp.assume(p);
        auto h3 = hp.assume(fneg(q));
        auto np = hp.mp(h1, h3);
        auto ef = hp.thm_lemma("l.efqi");
        auto qq = hp.mp(hp.mp(ef, np), h2);   // q under [.., ~q]
        size_t full = hp.close(qq);           // (~q->~p) -> (p -> (~q->q))
        HypProver hp2(b, Basis::Core);
        auto g1 = hp2.assume(fimp(fneg(q), fneg(p)));
        auto g2 = hp2.assume(p);
        auto st = hp2.step(full);
        auto cnqq = hp2.mp(hp2.mp(st, g1), g2);  // ~q -> q
        auto a2 = hp2.thm_axiom("A2", Substitution({{"p", q}}));
        hp2.close(hp2.mp(a2, cnqq));
        store.certify("l.contra", core, b.d);
    }
    // l.contra2: (p -> q) -> (~q -> ~p)
    {
        ProofBuilder b(core, store);
        HypProver hp(b, Basis::Core);
        auto h1 = hp.assume(fimp(p, q));
        auto h2 = hp.assume(fneg(q));
        auto h3 = hp.assume(fneg(fneg(p)));
        auto dne = hp.thm_lemma("l.dne");
        auto pp = hp.mp(dne, h3);
        auto qq = hp.mp(h1, pp);
        auto ef = hp.thm_lemma("l.efqi", Substitution({{"p", q}, {"q", fneg(p)}}));
        auto np = hp.mp(hp.mp(ef, h2), qq);  // ~p under [.., ~~p]
        size_t full = hp.close(np);  // (p->q) -> (~q -> (~~p -> ~p))
        HypProver hp2(b, Basis::Core);
        auto g1 = hp2.assume(fimp(p, q));
        auto g2 = hp2.assume(fneg(q));
        auto st = hp2.step(full);
        auto body = hp2.mp(hp2.mp(st, g1), g2);  // ~~p -> ~p
        auto a2 = hp2.thm_axiom("A2", Substitution({{"p", fneg(p)}}));
        hp2.close(hp2.mp(a2, body));
        store.certify("l.contra2", core, b.d);
    }
    // l.cases: (p -> q) -> ((~p -> q) -> q)
    {
        ProofBuilder b(core, store);
        HypProver hp(b, Basis::Core);
        auto h1 = hp.assume(fimp(p, q));
        auto h2 = hp.assume(fimp(fneg(p), q));
        auto h3 = hp.assume(fneg(q));
        auto c2 = hp.thm_lemma("l.contra2");
        auto np = hp.mp(hp.mp(c2, h1), h3);  // ~p
        auto qq = hp.mp(h2, np);             // q under [.., ~q]
        size_t full = hp.close(qq);
        HypProver hp2(b, Basis::Core);
        auto g1 = hp2.assume(fimp(p, q));
        auto g2 = hp2.assume(fimp(fneg(p), q));
        auto st = hp2.step(full);
        auto cnqq = hp2.mp(hp2.mp(st, g1), g2);
        auto a2 = hp2.thm_axiom("A2", Substitution({{"p", q}}));
        hp2.close(hp2.mp(a2, cnqq));
        store.certify("l.cases", core, b.d);
    }
    // l.nimp: p -> (~q -> ~(p->q))
    {
        ProofBuilder b(core, store);
        HypProver hp(b, Basis::Core);
        Frm cpq = fimp(p, q);
        auto h1 = hp.assume(p);
        auto h2 = hp.assume(fneg(q));
        auto h3 = hp.assume(fneg(fneg(cpq)));
        auto dne = hp.thm_lemma("l.dne", Substitution({{"p", cpq}}));
        auto imp = hp.mp(dne, h3);
        auto qq = hp.mp(imp, h1);
        auto ef = hp.thm_lemma("l.efqi", Substitution({{"p", q}, {"q", fneg(cpq)}}));
        auto ncpq = hp.mp(hp.mp(ef, h2), qq);  // ~(p->q) under [.., ~~(p->q)]
        size_t full = hp.close(ncpq);
        HypProver hp2(b, Basis::Core);
        auto g1 = hp2.assume(p);
        auto g2 = hp2.assume(fneg(q));
        auto st = hp2.step(full);
        auto body = hp2.mp(hp2.mp(st, g1), g2);  // ~~(p->q) -> ~(p->q)
        auto a2 = hp2.thm_axiom("A2", Substitution({{"p", fneg(cpq)}}));
        hp2.close(hp2.mp(a2, body));
        store.certify("l.nimp", core, b.d);
    }
}

}  // namespace mlk
