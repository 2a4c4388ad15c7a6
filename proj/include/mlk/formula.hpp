#pragma once

// Propositional formulas over a declared connective signature, substitutions,
// one-sided matching, and the closure predicates used by structural
// consequence relations.
//
// Formula nodes are interned: structurally equal formulas share one node, so
// equality is pointer equality and formulas are safe to share across threads
// (all values are immutable after construction).

#include <algorithm>
#include <cctype>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace mlk {

// ---------------------------------------------------------------------------
// Signature

struct Signature {
    // symbol -> arity
    std::vector<std::pair<std::string, int>> connectives;

    bool has(const std::string& sym) const {
        for (auto& c : connectives)
            if (c.first == sym) return true;
        return false;
    }
    int arity(const std::string& sym) const {
        for (auto& c : connectives)
            if (c.first == sym) return c.second;
        throw std::invalid_argument("unknown connective: " + sym);
    }
};

// Default signature {->:2, ~:1, |:2, &:2, <->:2}. ASCII symbols match the
// file-format grammar; there are no nullary connectives in the object
// language (top/bottom live only at the meta level).
inline const Signature& default_signature() {
    static const Signature sig{{{"->", 2}, {"~", 1}, {"&", 2}, {"|", 2}, {"<->", 2}}};
    return sig;
}

// The {->, ~} fragment used by the core refutation calculus.
inline const Signature& arrow_neg_signature() {
    static const Signature sig{{{"->", 2}, {"~", 1}}};
    return sig;
}

// ---------------------------------------------------------------------------
// Formula

class Formula;
using Frm = const Formula*;

class Formula {
public:
    // var is nonempty iff this node is a variable; otherwise conn/args hold.
    std::string var;
    std::string conn;
    std::vector<Frm> args;

    bool is_var() const { return !var.empty(); }
    // Metavariables (for schemata) are uppercase identifiers; ordinary
    // propositional variables are lowercase.
    bool is_metavar() const { return is_var() && std::isupper((unsigned char)var[0]); }

    static Frm mkvar(const std::string& name);
    static Frm mk(const std::string& conn, std::vector<Frm> args);

private:
    Formula() = default;
    friend struct FormulaInterner;
};

namespace detail {
inline void hash_mix(size_t& h, size_t v) {
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}
}  // namespace detail

struct FormulaInterner {
    struct Key {
        std::string var, conn;
        std::vector<Frm> args;
        bool operator==(const Key& o) const {
            return var == o.var && conn == o.conn && args == o.args;
        }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            size_t h = std::hash<std::string>{}(k.var);
            detail::hash_mix(h, std::hash<std::string>{}(k.conn));
            for (Frm a : k.args) detail::hash_mix(h, std::hash<const void*>{}(a));
            return h;
        }
    };

    std::mutex mu;
    std::unordered_map<Key, std::unique_ptr<Formula>, KeyHash> pool;
    // Scratch-region support: each active region logs the keys it inserted so
    // they can be evicted when the region ends, keeping the pool bounded
    // during batch runs. Pinned nodes survive eviction (the lemma store pins
    // every statement it retains).
    std::vector<std::vector<const Key*>> scratch;
    std::unordered_set<Frm> pinned;

    static FormulaInterner& instance() {
        static FormulaInterner in;
        return in;
    }

    Frm intern(std::string var, std::string conn, std::vector<Frm> args) {
        Key k{var, conn, args};
        std::lock_guard<std::mutex> lock(mu);
        auto it = pool.find(k);
        if (it != pool.end()) return it->second.get();
        auto f = std::unique_ptr<Formula>(new Formula());
        f->var = std::move(var);
        f->conn = std::move(conn);
        f->args = std::move(args);
        Frm p = f.get();
        auto pos = pool.emplace(std::move(k), std::move(f)).first;
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
    void pin(Frm f) {
        std::lock_guard<std::mutex> lock(mu);
        pin_rec(f);
    }

private:
    void pin_rec(Frm f) {
        if (!pinned.insert(f).second) return;
        for (Frm a : f->args) pin_rec(a);
    }
};

// Protects a formula (and its subterms) from scratch-region eviction.
inline void pin_formula(Frm f) { FormulaInterner::instance().pin(f); }

inline Frm Formula::mkvar(const std::string& name) {
    return FormulaInterner::instance().intern(name, "", {});
}
inline Frm Formula::mk(const std::string& conn, std::vector<Frm> args) {
    return FormulaInterner::instance().intern("", conn, std::move(args));
}

// Convenience constructors for the default connectives.
inline Frm fvar(const std::string& n) { return Formula::mkvar(n); }
inline Frm fimp(Frm a, Frm b) { return Formula::mk("->", {a, b}); }
inline Frm fneg(Frm a) { return Formula::mk("~", {a}); }
inline Frm fand(Frm a, Frm b) { return Formula::mk("&", {a, b}); }
inline Frm forr(Frm a, Frm b) { return Formula::mk("|", {a, b}); }
inline Frm fiff(Frm a, Frm b) { return Formula::mk("<->", {a, b}); }

inline bool well_formed(Frm a, const Signature& sig) {
    if (a->is_var()) return true;
    if (!sig.has(a->conn)) return false;
    if ((int)a->args.size() != sig.arity(a->conn)) return false;
    for (Frm x : a->args)
        if (!well_formed(x, sig)) return false;
    return true;
}

inline void collect_vars(Frm a, std::set<std::string>& out) {
    if (a->is_var()) {
        out.insert(a->var);
        return;
    }
    for (Frm x : a->args) collect_vars(x, out);
}

inline std::set<std::string> vars_of(Frm a) {
    std::set<std::string> s;
    collect_vars(a, s);
    return s;
}

inline int connective_count(Frm a) {
    if (a->is_var()) return 0;
    int n = 1;
    for (Frm x : a->args) n += connective_count(x);
    return n;
}

// Node count (variables and connectives alike); the "size" used by the
// saturation audit caps.
inline int node_count(Frm a) {
    int n = 1;
    for (Frm x : a->args) n += node_count(x);
    return n;
}

// ---------------------------------------------------------------------------
// Substitution

// Finite map variable -> formula, identity elsewhere.
class Substitution {
public:
    std::map<std::string, Frm> bindings;

    Substitution() = default;
    explicit Substitution(std::map<std::string, Frm> b) : bindings(std::move(b)) {}

    Frm operator()(const std::string& v) const {
        auto it = bindings.find(v);
        return it == bindings.end() ? Formula::mkvar(v) : it->second;
    }
    bool is_identity() const {
        for (auto& [v, f] : bindings)
            if (f != Formula::mkvar(v)) return false;
        return true;
    }
    bool operator==(const Substitution& o) const { return bindings == o.bindings; }
};

inline Frm apply_subst(const Substitution& s, Frm a) {
    if (a->is_var()) return s(a->var);
    std::vector<Frm> args;
    args.reserve(a->args.size());
    for (Frm x : a->args) args.push_back(apply_subst(s, x));
    return Formula::mk(a->conn, std::move(args));
}

// compose_subst(s1, s2) applies s2 first: result(A) = s1(s2(A)).
inline Substitution compose_subst(const Substitution& s1, const Substitution& s2) {
    Substitution r;
    for (auto& [v, f] : s2.bindings) r.bindings[v] = apply_subst(s1, f);
    for (auto& [v, f] : s1.bindings)
        if (!r.bindings.count(v)) r.bindings[v] = f;
    return r;
}

namespace detail {
inline bool match_rec(Frm pattern, Frm target, std::map<std::string, Frm>& out) {
    if (pattern->is_var()) {
        auto it = out.find(pattern->var);
        if (it != out.end()) return it->second == target;
        out.emplace(pattern->var, target);
        return true;
    }
    if (target->is_var()) return false;
    if (pattern->conn != target->conn || pattern->args.size() != target->args.size())
        return false;
    for (size_t i = 0; i < pattern->args.size(); ++i)
        if (!match_rec(pattern->args[i], target->args[i], out)) return false;
    return true;
}
}  // namespace detail

// One-sided matching: the unique most-restricted sigma with
// apply_subst(sigma, pattern) == target, if one exists. Domain is exactly the
// variables of the pattern.
inline std::optional<Substitution> match_formula(Frm pattern, Frm target) {
    std::map<std::string, Frm> b;
    if (!detail::match_rec(pattern, target, b)) return std::nullopt;
    return Substitution(std::move(b));
}

// As match_formula, but pattern variables that are not metavariables must
// match themselves literally. Used for schema instantiation, where lowercase
// variables in a schema are concrete.
inline std::optional<Substitution> match_schema_formula(Frm pattern, Frm target) {
    auto m = match_formula(pattern, target);
    if (!m) return std::nullopt;
    for (auto& [v, f] : m->bindings)
        if (!std::isupper((unsigned char)v[0]) && f != Formula::mkvar(v)) return std::nullopt;
    return m;
}

// ---------------------------------------------------------------------------
// Closure predicates (Section 3.1 notions)

inline bool closed_under_subst(const std::set<Frm>& G, const Substitution& s) {
    for (Frm a : G)
        if (!G.count(apply_subst(s, a))) return false;
    return true;
}

inline bool closed_under_reverse(const std::set<Frm>& G, const Substitution& s) {
    // G subset of s(G)
    std::set<Frm> image;
    for (Frm a : G) image.insert(apply_subst(s, a));
    for (Frm a : G)
        if (!image.count(a)) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Printing. Precedence: ~ > & > | > -> > <->; -> is right-associative, & and
// | associate to the left. Round-trips with parse_formula.

namespace detail {
inline int prec_of(const std::string& c) {
    if (c == "~") return 5;
    if (c == "&") return 4;
    if (c == "|") return 3;
    if (c == "->") return 2;
    if (c == "<->") return 1;
    return 0;
}

inline void print_rec(Frm a, int parent_prec, bool right_pos, std::string& out) {
    if (a->is_var()) {
        out += a->var;
        return;
    }
    if (a->conn == "~") {
        out += '~';
        print_rec(a->args[0], prec_of("~"), false, out);
        return;
    }
    int p = prec_of(a->conn);
    bool rassoc = a->conn == "->";
    bool need = p < parent_prec || (p == parent_prec && right_pos != rassoc);
    if (need) out += '(';
    print_rec(a->args[0], p + (rassoc ? 1 : 0), false, out);
    out += ' ';
    out += a->conn;
    out += ' ';
    print_rec(a->args[1], p + (rassoc ? 0 : 1), true, out);
    if (need) out += ')';
}
}  // namespace detail

inline std::string print_formula(Frm a) {
    std::string s;
    detail::print_rec(a, 0, false, s);
    return s;
}

// ---------------------------------------------------------------------------
// Parsing

struct ParseError : std::runtime_error {
    size_t pos;
    ParseError(const std::string& msg, size_t at)
        : std::runtime_error(msg + " at position " + std::to_string(at)), pos(at) {}
};

namespace detail {

class FormulaParser {
public:
    FormulaParser(const std::string& s, size_t start) : src(s), i(start) {}

    Frm parse() {
        Frm a = parse_iff();
        return a;
    }
    size_t pos() const { return i; }

private:
    const std::string& src;
    size_t i;

    void skip_ws() {
        while (i < src.size() && (src[i] == ' ' || src[i] == '\t')) ++i;
    }
    bool eat(const std::string& tok) {
        skip_ws();
        if (src.compare(i, tok.size(), tok) == 0) {
            // "-" must not swallow the first char of "->"
            if (tok == "-" && i + 1 < src.size() && src[i + 1] == '>') return false;
            i += tok.size();
            return true;
        }
        return false;
    }

    Frm parse_iff() {
        Frm a = parse_imp();
        while (eat("<->")) a = fiff(a, parse_imp());
        return a;
    }
    Frm parse_imp() {
        Frm a = parse_or();
        if (eat("->")) return fimp(a, parse_imp());  // right-associative
        return a;
    }
    Frm parse_or() {
        Frm a = parse_and();
        while (true) {
            skip_ws();
            if (i < src.size() && src[i] == '|') {
                ++i;
                a = forr(a, parse_and());
            } else
                break;
        }
        return a;
    }
    Frm parse_and() {
        Frm a = parse_unary();
        while (true) {
            skip_ws();
            if (i < src.size() && src[i] == '&') {
                ++i;
                a = fand(a, parse_unary());
            } else
                break;
        }
        return a;
    }
    Frm parse_unary() {
        skip_ws();
        if (i >= src.size()) throw ParseError("unexpected end of formula", i);
        char c = src[i];
        if (c == '~') {
            ++i;
            return fneg(parse_unary());
        }
        if (c == '(') {
            ++i;
            Frm a = parse_iff();
            skip_ws();
            if (i >= src.size() || src[i] != ')') throw ParseError("expected ')'", i);
            ++i;
            return a;
        }
        if (std::isalpha((unsigned char)c)) {
            size_t j = i;
            ++i;
            while (i < src.size() &&
                   (std::isalnum((unsigned char)src[i]) || src[i] == '_'))
                ++i;
            return Formula::mkvar(src.substr(j, i - j));
        }
        throw ParseError(std::string("unexpected character '") + c + "'", i);
    }
};

}  // namespace detail

// Parses a full string as a formula. Lowercase identifiers are propositional
// variables; uppercase identifiers are metavariables (schemata only).
inline Frm parse_formula(const std::string& s) {
    detail::FormulaParser p(s, 0);
    Frm a = p.parse();
    size_t i = p.pos();
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    if (i != s.size()) throw ParseError("trailing input after formula", i);
    return a;
}

// Parses a formula starting at *pos, advancing *pos past it.
inline Frm parse_formula_prefix(const std::string& s, size_t& pos) {
    detail::FormulaParser p(s, pos);
    Frm a = p.parse();
    pos = p.pos();
    return a;
}

}  // namespace mlk
