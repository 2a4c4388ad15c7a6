#pragma once

// Signed atomic statements and the meta-language of statements: meta-top,
// meta-bottom, meta-conjunction, meta-disjunction, meta-implication and
// meta-negation over atoms of the form +A / -A.
//
// Statements are interned like formulas, so equality is pointer equality.
// Schemata are plain statements whose formulas contain uppercase
// metavariables.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "formula.hpp"

namespace mlk {

enum class SKind : uint8_t { Atom, MTop, MBot, MAnd, MOr, MImpl, MNeg };
enum class Polarity : uint8_t { Positive, Negative, Mixed };

class Statement;
using Stm = const Statement*;

class Statement {
public:
    SKind kind;
    bool sign = true;      // Atom only: true = asserted (+), false = rejected (-)
    Frm body = nullptr;    // Atom only
    Stm a = nullptr, b = nullptr;  // children for MAnd/MOr/MImpl (a,b) and MNeg (a)

    bool is_atom() const { return kind == SKind::Atom; }

    static Stm atom(bool sign, Frm body);
    static Stm asserted(Frm f) { return atom(true, f); }
    static Stm rejected(Frm f) { return atom(false, f); }
    static Stm mtop();
    static Stm mbot();
    static Stm mand(Stm x, Stm y);
    static Stm mor(Stm x, Stm y);
    static Stm mimpl(Stm x, Stm y);
    static Stm mneg(Stm x);

private:
    Statement() = default;
    friend struct StatementInterner;
};

struct StatementInterner {
    struct Key {
        SKind kind;
        bool sign;
        Frm body;
        Stm a, b;
        bool operator==(const Key& o) const {
            return kind == o.kind && sign == o.sign && body == o.body && a == o.a &&
                   b == o.b;
        }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = (size_t)k.kind * 2 + (k.sign ? 1 : 0);
            detail::hash_mix(h, std::hash<const void*>{}(k.body));
            detail::hash_mix(h, std::hash<const void*>{}(k.a));
            detail::hash_mix(h, std::hash<const void*>{}(k.b));
            return h;
        }
    };

    std::mutex mu;
    std::unordered_map<Key, std::unique_ptr<Statement>, KeyHash> pool;
    // Scratch-region bookkeeping; see FormulaInterner for the contract.
    std::vector<std::vector<const Key*>> scratch;
    std::unordered_set<Stm> pinned;

    static StatementInterner& instance() {
        static StatementInterner in;
        return in;
    }

    Stm intern(SKind kind, bool sign, Frm body, Stm a, Stm b) {
        Key k{kind, sign, body, a, b};
        std::lock_guard<std::mutex> lock(mu);
        auto it = pool.find(k);
        if (it != pool.end()) return it->second.get();
        auto s = std::unique_ptr<Statement>(new Statement());
        s->kind = kind;
        s->sign = sign;
        s->body = body;
        s->a = a;
        s->b = b;
        Stm p = s.get();
        auto pos = pool.emplace(k, std::move(s)).first;
        if (!scratch.empty()) scratch.back().push_back(&pos->first);
        return p;
    }

    void push_scratch() {
        std::lock_guard<std::mutex> lock(mu);
        scratch.emplace_back();
    }
    void pop_scratch() {
        std::lock_guard<std::mutex> lock(mu);
        for (const Key* kp : scratch.back()) {
            auto it = pool.find(*kp);
            if (it == pool.end() || pinned.count(it->second.get())) continue;
            pool.erase(it);
        }
        scratch.pop_back();
    }
    void pin(Stm s) {
        std::lock_guard<std::mutex> lock(mu);
        pin_rec(s);
    }

private:
    void pin_rec(Stm s) {
        if (!pinned.insert(s).second) return;
        if (s->body) pin_formula(s->body);
        if (s->a) pin_rec(s->a);
        if (s->b) pin_rec(s->b);
    }
};

// Protects a statement (with its formulas) from scratch-region eviction.
inline void pin_statement(Stm s) { StatementInterner::instance().pin(s); }

// Bounds interner memory across a batch of independent jobs: formulas and
// statements first interned while the region is active are evicted when it
// ends. Nothing interned inside the region may escape it except through
// pin_formula/pin_statement (LemmaStore does this for retained lemmas).
// Regions nest LIFO.
class ScratchRegion {
public:
    ScratchRegion() {
        FormulaInterner::instance().push_scratch();
        StatementInterner::instance().push_scratch();
    }
    ~ScratchRegion() {
        StatementInterner::instance().pop_scratch();
        FormulaInterner::instance().pop_scratch();
    }
    ScratchRegion(const ScratchRegion&) = delete;
    ScratchRegion& operator=(const ScratchRegion&) = delete;
};

inline Stm Statement::atom(bool sign, Frm body) {
    return StatementInterner::instance().intern(SKind::Atom, sign, body, nullptr, nullptr);
}
inline Stm Statement::mtop() {
    return StatementInterner::instance().intern(SKind::MTop, true, nullptr, nullptr, nullptr);
}
inline Stm Statement::mbot() {
    return StatementInterner::instance().intern(SKind::MBot, true, nullptr, nullptr, nullptr);
}
inline Stm Statement::mand(Stm x, Stm y) {
    return StatementInterner::instance().intern(SKind::MAnd, true, nullptr, x, y);
}
inline Stm Statement::mor(Stm x, Stm y) {
    return StatementInterner::instance().intern(SKind::MOr, true, nullptr, x, y);
}
inline Stm Statement::mimpl(Stm x, Stm y) {
    return StatementInterner::instance().intern(SKind::MImpl, true, nullptr, x, y);
}
inline Stm Statement::mneg(Stm x) {
    return StatementInterner::instance().intern(SKind::MNeg, true, nullptr, x, nullptr);
}

inline Stm flip_atom(Stm x) {
    if (!x->is_atom()) throw std::invalid_argument("flip_atom: not an atomic statement");
    return Statement::atom(!x->sign, x->body);
}

// ---------------------------------------------------------------------------
// Polarity (positive: no MBot, no rejected atoms; negative: no MTop, no
// asserted atoms; otherwise mixed).

inline Polarity polarity(Stm s) {
    bool pos_ok = true, neg_ok = true;
    std::function<void(Stm)> walk = [&](Stm x) {
        switch (x->kind) {
            case SKind::Atom:
                (x->sign ? neg_ok : pos_ok) = false;
                break;
            case SKind::MTop:
                neg_ok = false;
                break;
            case SKind::MBot:
                pos_ok = false;
                break;
            case SKind::MNeg:
                walk(x->a);
                break;
            default:
                walk(x->a);
                walk(x->b);
        }
    };
    walk(s);
    if (pos_ok) return Polarity::Positive;
    if (neg_ok) return Polarity::Negative;
    return Polarity::Mixed;
}

// ---------------------------------------------------------------------------
// Substitution extension: homomorphic on meta-structure, rewrites atoms.

inline Stm subst_statement(const Substitution& s, Stm x) {
    switch (x->kind) {
        case SKind::Atom:
            return Statement::atom(x->sign, apply_subst(s, x->body));
        case SKind::MTop:
        case SKind::MBot:
            return x;
        case SKind::MNeg:
            return Statement::mneg(subst_statement(s, x->a));
        case SKind::MAnd:
            return Statement::mand(subst_statement(s, x->a), subst_statement(s, x->b));
        case SKind::MOr:
            return Statement::mor(subst_statement(s, x->a), subst_statement(s, x->b));
        case SKind::MImpl:
            return Statement::mimpl(subst_statement(s, x->a), subst_statement(s, x->b));
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------
// Schema instantiation: metavariables are uppercase identifiers inside the
// formulas of a schema. instance_of returns the unique binding mapping the
// schema onto the given statement, consistent across repeated metavariables.

namespace detail {
inline bool instance_rec(Stm sch, Stm tgt, std::map<std::string, Frm>& bind) {
    if (sch->kind != tgt->kind) return false;
    switch (sch->kind) {
        case SKind::Atom: {
            if (sch->sign != tgt->sign) return false;
            std::map<std::string, Frm> local = bind;
            if (!match_rec(sch->body, tgt->body, local)) return false;
            // non-metavariables must map to themselves
            for (auto& [v, f] : local)
                if (!std::isupper((unsigned char)v[0]) && f != Formula::mkvar(v))
                    return false;
            bind = std::move(local);
            return true;
        }
        case SKind::MTop:
        case SKind::MBot:
            return true;
        case SKind::MNeg:
            return instance_rec(sch->a, tgt->a, bind);
        default:
            return instance_rec(sch->a, tgt->a, bind) &&
                   instance_rec(sch->b, tgt->b, bind);
    }
}
}  // namespace detail

inline std::optional<Substitution> instance_of(Stm sch, Stm target) {
    std::map<std::string, Frm> bind;
    if (!detail::instance_rec(sch, target, bind)) return std::nullopt;
    Substitution s(std::move(bind));
    // round-trip: guards against metavariables of the target leaking through
    if (subst_statement(s, sch) != target) return std::nullopt;
    return s;
}

inline Stm build_instance(Stm sch, const Substitution& binding) {
    return subst_statement(binding, sch);
}

// ---------------------------------------------------------------------------
// Meta-evaluation (the meta-level is classical).

inline void collect_atoms(Stm s, std::set<Stm>& out) {
    switch (s->kind) {
        case SKind::Atom:
            out.insert(s);
            break;
        case SKind::MTop:
        case SKind::MBot:
            break;
        case SKind::MNeg:
            collect_atoms(s->a, out);
            break;
        default:
            collect_atoms(s->a, out);
            collect_atoms(s->b, out);
    }
}

inline bool meta_eval(Stm s, const std::map<Stm, bool>& v) {
    switch (s->kind) {
        case SKind::Atom: {
            auto it = v.find(s);
            if (it == v.end())
                throw std::invalid_argument("meta_eval: unassigned atomic statement");
            return it->second;
        }
        case SKind::MTop:
            return true;
        case SKind::MBot:
            return false;
        case SKind::MNeg:
            return !meta_eval(s->a, v);
        case SKind::MAnd:
            return meta_eval(s->a, v) && meta_eval(s->b, v);
        case SKind::MOr:
            return meta_eval(s->a, v) || meta_eval(s->b, v);
        case SKind::MImpl:
            return !meta_eval(s->a, v) || meta_eval(s->b, v);
    }
    throw std::logic_error("unreachable");
}

// True iff x and y agree under every valuation of their atoms.
inline bool meta_equivalent(Stm x, Stm y) {
    std::set<Stm> atoms;
    collect_atoms(x, atoms);
    collect_atoms(y, atoms);
    std::vector<Stm> as(atoms.begin(), atoms.end());
    if (as.size() > 20) throw std::invalid_argument("meta_equivalent: too many atoms");
    for (uint64_t m = 0; m < (1ULL << as.size()); ++m) {
        std::map<Stm, bool> v;
        for (size_t i = 0; i < as.size(); ++i) v[as[i]] = (m >> i) & 1;
        if (meta_eval(x, v) != meta_eval(y, v)) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Rule forms: premises / conclusions sets of atomic statements, encoding
// (and-of-premises) => (or-of-conclusions).

// Canonical structural order on atoms: sign first (+ before -), then formula
// by size, then printed form. Deterministic because formulas are interned.
inline bool atom_less(Stm x, Stm y) {
    if (x == y) return false;
    if (x->sign != y->sign) return x->sign > y->sign;
    int nx = node_count(x->body), ny = node_count(y->body);
    if (nx != ny) return nx < ny;
    return print_formula(x->body) < print_formula(y->body);
}

struct AtomLess {
    bool operator()(Stm x, Stm y) const { return atom_less(x, y); }
};

struct RuleForm {
    std::set<Stm, AtomLess> premises;
    std::set<Stm, AtomLess> conclusions;

    bool operator==(const RuleForm& o) const {
        return premises == o.premises && conclusions == o.conclusions;
    }
    bool operator<(const RuleForm& o) const {
        auto key = [](const RuleForm& r) {
            std::vector<Stm> v(r.premises.begin(), r.premises.end());
            v.push_back(nullptr);
            v.insert(v.end(), r.conclusions.begin(), r.conclusions.end());
            return v;
        };
        return key(*this) < key(o);
    }

    // The statement this rule form encodes. Empty premises read as MTop,
    // empty conclusions as MBot.
    Stm as_statement() const {
        Stm prem = nullptr;
        for (Stm p : premises) prem = prem ? Statement::mand(prem, p) : p;
        Stm conc = nullptr;
        for (Stm c : conclusions) conc = conc ? Statement::mor(conc, c) : c;
        if (!prem && !conc) return Statement::mimpl(Statement::mtop(), Statement::mbot());
        if (!prem) return conc;
        if (!conc) return Statement::mimpl(prem, Statement::mbot());
        return Statement::mimpl(prem, conc);
    }
};

namespace detail {

// negation normal form over literals (atom, negated?) — MTop/MBot folded in
// by the caller via short-circuiting on clause construction
struct SLit {
    Stm atom;
    bool neg;
    bool operator<(const SLit& o) const {
        if (atom != o.atom) return AtomLess{}(atom, o.atom);
        return neg < o.neg;
    }
    bool operator==(const SLit& o) const { return atom == o.atom && neg == o.neg; }
};

using SClause = std::set<SLit>;  // disjunction of literals

// returns nullopt for "constant true" clause set member
inline void cnf_rec(Stm s, bool neg, std::vector<SClause>& out);

inline std::vector<SClause> cnf_of(Stm s, bool neg) {
    std::vector<SClause> cs;
    cnf_rec(s, neg, cs);
    return cs;
}

inline void cnf_rec(Stm s, bool neg, std::vector<SClause>& out) {
    switch (s->kind) {
        case SKind::Atom:
            out.push_back({SLit{s, neg}});
            return;
        case SKind::MTop:
            if (neg) out.push_back({});  // empty clause = false
            return;
        case SKind::MBot:
            if (!neg) out.push_back({});
            return;
        case SKind::MNeg:
            cnf_rec(s->a, !neg, out);
            return;
        case SKind::MAnd:
        case SKind::MOr: {
            bool conjunctive = (s->kind == SKind::MAnd) != neg;
            if (conjunctive) {
                cnf_rec(s->a, neg, out);
                cnf_rec(s->b, neg, out);
            } else {
                auto l = cnf_of(s->a, neg), r = cnf_of(s->b, neg);
                for (auto& c1 : l)
                    for (auto& c2 : r) {
                        SClause c = c1;
                        c.insert(c2.begin(), c2.end());
                        out.push_back(std::move(c));
                    }
            }
            return;
        }
        case SKind::MImpl: {
            // a => b is (not a) or b
            if (neg) {
                cnf_rec(s->a, false, out);
                cnf_rec(s->b, true, out);
            } else {
                auto l = cnf_of(s->a, true), r = cnf_of(s->b, false);
                for (auto& c1 : l)
                    for (auto& c2 : r) {
                        SClause c = c1;
                        c.insert(c2.begin(), c2.end());
                        out.push_back(std::move(c));
                    }
            }
            return;
        }
    }
}

}  // namespace detail

// Normalizes a statement into an equivalent meta-conjunction of rule forms.
// A lone MTop yields the empty list; a lone MBot yields the single rule
// with empty premises and empty conclusions.
inline std::vector<RuleForm> to_rule_form(Stm s) {
    auto clauses = detail::cnf_of(s, false);
    std::set<RuleForm> rules;
    for (auto& c : clauses) {
        // tautological clause (contains l and not-l) is dropped
        bool taut = false;
        for (auto& l : c)
            if (c.count(detail::SLit{l.atom, !l.neg})) {
                taut = true;
                break;
            }
        if (taut) continue;
        RuleForm r;
        for (auto& l : c)
            (l.neg ? r.premises : r.conclusions).insert(l.atom);
        rules.insert(std::move(r));
    }
    // subsumption: drop any rule form implied by a stronger one (subset of
    // premises, subset of conclusions)
    std::vector<RuleForm> out;
    for (auto& r : rules) {
        bool subsumed = false;
        for (auto& q : rules) {
            if (q == r) continue;
            bool sub = std::includes(r.premises.begin(), r.premises.end(),
                                     q.premises.begin(), q.premises.end(), AtomLess{}) &&
                       std::includes(r.conclusions.begin(), r.conclusions.end(),
                                     q.conclusions.begin(), q.conclusions.end(), AtomLess{});
            if (sub && !(std::includes(q.premises.begin(), q.premises.end(),
                                       r.premises.begin(), r.premises.end(), AtomLess{}) &&
                         std::includes(q.conclusions.begin(), q.conclusions.end(),
                                       r.conclusions.begin(), r.conclusions.end(),
                                       AtomLess{}))) {
                subsumed = true;
                break;
            }
        }
        if (!subsumed) out.push_back(r);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Printing. Grammar: '+' f | '-' f | TOP | BOT | NOT s | s AND s | s OR s |
// s '=>' s, with NOT > AND > OR > '=>' and right-associative '=>'.

namespace detail {
inline int sprec(SKind k) {
    switch (k) {
        case SKind::MImpl: return 1;
        case SKind::MOr: return 2;
        case SKind::MAnd: return 3;
        default: return 9;
    }
}

inline void print_stm_rec(Stm s, int parent, bool right_pos, std::string& out) {
    switch (s->kind) {
        case SKind::Atom:
            out += s->sign ? '+' : '-';
            if (s->body->is_var())
                out += s->body->var;
            else {
                out += '(';
                out += print_formula(s->body);
                out += ')';
            }
            return;
        case SKind::MTop:
            out += "TOP";
            return;
        case SKind::MBot:
            out += "BOT";
            return;
        case SKind::MNeg:
            out += "NOT ";
            print_stm_rec(s->a, sprec(SKind::MNeg), false, out);
            return;
        default: {
            int p = sprec(s->kind);
            bool rassoc = s->kind == SKind::MImpl;
            bool need = p < parent || (p == parent && right_pos != rassoc);
            if (need) out += '(';
            print_stm_rec(s->a, p + (rassoc ? 1 : 0), false, out);
            out += s->kind == SKind::MAnd ? " AND " : s->kind == SKind::MOr ? " OR " : " => ";
            print_stm_rec(s->b, p + (rassoc ? 0 : 1), true, out);
            if (need) out += ')';
        }
    }
}
}  // namespace detail

inline std::string print_statement(Stm s) {
    std::string out;
    detail::print_stm_rec(s, 0, false, out);
    return out;
}

inline std::string print_rule_form(const RuleForm& r) {
    std::string out = "{";
    bool first = true;
    for (Stm p : r.premises) {
        if (!first) out += ", ";
        first = false;
        out += print_statement(p);
    }
    out += "} / {";
    first = true;
    for (Stm c : r.conclusions) {
        if (!first) out += ", ";
        first = false;
        out += print_statement(c);
    }
    out += "}";
    return out;
}

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

class StatementParser {
public:
    StatementParser(const std::string& s, size_t start) : src(s), i(start) {}

    Stm parse() { return parse_impl(); }
    size_t pos() const { return i; }

private:
    const std::string& src;
    size_t i;

    void skip_ws() {
        while (i < src.size() && (src[i] == ' ' || src[i] == '\t')) ++i;
    }
    bool at_word(const std::string& w) {
        skip_ws();
        if (src.compare(i, w.size(), w) != 0) return false;
        size_t e = i + w.size();
        if (e < src.size() && (std::isalnum((unsigned char)src[e]) || src[e] == '_'))
            return false;
        return true;
    }
    bool eat_word(const std::string& w) {
        if (!at_word(w)) return false;
        i += w.size();
        return true;
    }

    Stm parse_impl() {
        Stm a = parse_or();
        skip_ws();
        if (src.compare(i, 2, "=>") == 0) {
            i += 2;
            return Statement::mimpl(a, parse_impl());  // right-associative
        }
        return a;
    }
    Stm parse_or() {
        Stm a = parse_and();
        while (eat_word("OR")) a = Statement::mor(a, parse_and());
        return a;
    }
    Stm parse_and() {
        Stm a = parse_unary();
        while (eat_word("AND")) a = Statement::mand(a, parse_unary());
        return a;
    }
    Stm parse_unary() {
        skip_ws();
        if (i >= src.size()) throw ParseError("unexpected end of statement", i);
        if (eat_word("NOT")) return Statement::mneg(parse_unary());
        if (eat_word("TOP")) return Statement::mtop();
        if (eat_word("BOT")) return Statement::mbot();
        char c = src[i];
        if (c == '(') {
            ++i;
            Stm a = parse_impl();
            skip_ws();
            if (i >= src.size() || src[i] != ')') throw ParseError("expected ')'", i);
            ++i;
            return a;
        }
        if (c == '+' || c == '-') {
            bool sign = c == '+';
            ++i;
            skip_ws();
            Frm f = parse_formula_prefix(src, i);
            return Statement::atom(sign, f);
        }
        throw ParseError(std::string("unexpected character '") + c + "' in statement", i);
    }
};

}  // namespace detail

inline Stm parse_statement(const std::string& s) {
    detail::StatementParser p(s, 0);
    Stm a = p.parse();
    size_t i = p.pos();
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i != s.size()) throw ParseError("trailing input after statement", i);
    return a;
}

inline Stm parse_statement_prefix(const std::string& s, size_t& pos) {
    detail::StatementParser p(s, pos);
    Stm a = p.parse();
    pos = p.pos();
    return a;
}

}  // namespace mlk
