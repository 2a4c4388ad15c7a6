#pragma once

// Text formats:
//
//  .mld derivation files:
//      system <name>
//      premises { <stmt>, <stmt>, ... }        (optional)
//      1: <stmt> ; <justification>
//      2: <stmt> ; <justification>
//      ...
//  justifications: meta <id> {a:=<stmt>, ...} | axiom <id> |
//      rule <id> {X:=<formula>, ...} | sb <n> {p:=<formula>, ...} |
//      rs <n> {p:=<formula>, ...} | mmp <n> <m> | premise | lemma <name>
//  (step references are 1-based in files)
//
//  .mlc calculus files:
//      system <name>
//      signature { ->:2, ~:1, ... }            (optional; default signature)
//      no-rs                                    (optional flag)
//      axiom <id>: <stmt>
//      rule <id>: <schema>
//
//  relation files:
//      universe { +p, -q, ... }
//      {+p, -q} |- {+r}
//
//  rule files: {<stmt>, ...} / {<stmt>, ...}
//
// Lines starting with '#' and blank lines are ignored everywhere.

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "consequence.hpp"
#include "deduction.hpp"

namespace mlk {

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
}

inline bool eat(const std::string& s, size_t& i, char c) {
    skip_ws(s, i);
    if (i < s.size() && s[i] == c) {
        ++i;
        return true;
    }
    return false;
}

inline std::string read_ident(const std::string& s, size_t& i) {
    skip_ws(s, i);
    size_t start = i;
    while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_' ||
                            s[i] == '.' || s[i] == '-'))
        ++i;
    if (i == start) throw ParseError("identifier expected", start);
    return s.substr(start, i - start);
}

// `{name:=<payload>, name:=<payload>, ...}` where the payload parser leaves
// the cursor after the parsed object. Also accepts `;` separators and `{}`.
template <typename ParsePayload>
void parse_binding_braces(const std::string& s, size_t& i, ParsePayload&& payload) {
    if (!eat(s, i, '{')) throw ParseError("'{' expected", i);
    skip_ws(s, i);
    if (eat(s, i, '}')) return;
    while (true) {
        std::string name = read_ident(s, i);
        skip_ws(s, i);
        if (i + 1 >= s.size() || s[i] != ':' || s[i + 1] != '=')
            throw ParseError("':=' expected", i);
        i += 2;
        skip_ws(s, i);
        payload(name, i);
        skip_ws(s, i);
        if (eat(s, i, ',') || eat(s, i, ';')) continue;
        if (eat(s, i, '}')) return;
        throw ParseError("',' or '}' expected in binding list", i);
    }
}

}  // namespace detail

inline Substitution parse_substitution_braces(const std::string& s, size_t& i) {
    Substitution out;
    detail::parse_binding_braces(s, i, [&](const std::string& name, size_t& j) {
        out.bindings[name] = parse_formula_prefix(s, j);
    });
    return out;
}

inline MetaBinding parse_meta_binding_braces(const std::string& s, size_t& i) {
    MetaBinding out;
    detail::parse_binding_braces(s, i, [&](const std::string& name, size_t& j) {
        out[name] = parse_statement_prefix(s, j);
    });
    return out;
}

inline std::string print_substitution(const Substitution& s) {
    std::string out = "{";
    bool first = true;
    for (auto& [v, f] : s.bindings) {
        if (!first) out += ", ";
        first = false;
        out += v + ":=" + print_formula(f);
    }
    return out + "}";
}

inline std::string print_meta_binding(const MetaBinding& b) {
    std::string out = "{";
    bool first = true;
    for (auto& [v, st] : b) {
        if (!first) out += ", ";
        first = false;
        out += v + ":=" + print_statement(st);
    }
    return out + "}";
}

// ---------------------------------------------------------------------------
// Justifications

inline std::string print_justification(const Justification& j) {
    if (auto* m = std::get_if<JMetaAxiom>(&j))
        return "meta " + m->id + " " + print_meta_binding(m->inst);
    if (auto* a = std::get_if<JAxiom>(&j)) return "axiom " + a->id;
    if (auto* r = std::get_if<JRule>(&j))
        return "rule " + r->id + " " + print_substitution(r->bind);
    if (auto* s = std::get_if<JSb>(&j))
        return "sb " + std::to_string(s->ref + 1) + " " + print_substitution(s->s);
    if (auto* r = std::get_if<JRS>(&j))
        return "rs " + std::to_string(r->ref + 1) + " " + print_substitution(r->s);
    if (auto* m = std::get_if<JMMP>(&j))
        return "mmp " + std::to_string(m->major + 1) + " " + std::to_string(m->minor + 1);
    if (std::get_if<JPremise>(&j)) return "premise";
    if (auto* l = std::get_if<JLemma>(&j)) return "lemma " + l->name;
    return "?";
}

inline Justification parse_justification(const std::string& s, size_t& i) {
    std::string kw = detail::read_ident(s, i);
    auto read_index = [&]() -> size_t {
        detail::skip_ws(s, i);
        size_t start = i;
        while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
        if (i == start) throw ParseError("step number expected", start);
        long n = std::stol(s.substr(start, i - start));
        if (n < 1) throw ParseError("step numbers are 1-based", start);
        return (size_t)(n - 1);
    };
    if (kw == "meta") {
        std::string id = detail::read_ident(s, i);
        return JMetaAxiom{id, parse_meta_binding_braces(s, i)};
    }
    if (kw == "axiom") return JAxiom{detail::read_ident(s, i)};
    if (kw == "rule") {
        std::string id = detail::read_ident(s, i);
        return JRule{id, parse_substitution_braces(s, i)};
    }
    if (kw == "sb") {
        size_t ref = read_index();
        return JSb{ref, parse_substitution_braces(s, i)};
    }
    if (kw == "rs") {
        size_t ref = read_index();
        return JRS{ref, parse_substitution_braces(s, i)};
    }
    if (kw == "mmp") {
        size_t a = read_index();
        size_t b = read_index();
        return JMMP{a, b};
    }
    if (kw == "premise") return JPremise{};
    if (kw == "lemma") {
        detail::skip_ws(s, i);
        size_t start = i;
        i = s.size();
        std::string name = s.substr(start);
        while (!name.empty() && (name.back() == ' ' || name.back() == '\t'))
            name.pop_back();
        if (name.empty()) throw ParseError("lemma name expected", start);
        return JLemma{name};
    }
    throw ParseError("unknown justification '" + kw + "'", i);
}

// ---------------------------------------------------------------------------
// Derivation files (.mld)

struct MldFile {
    std::string system;
    Derivation derivation;
};

inline std::string print_mld(const std::string& system, const Derivation& d) {
    std::ostringstream out;
    out << "system " << system << "\n";
    if (!d.premises.empty()) {
        out << "premises { ";
        for (size_t i = 0; i < d.premises.size(); ++i)
            out << (i ? ", " : "") << print_statement(d.premises[i]);
        out << " }\n";
    }
    for (size_t i = 0; i < d.steps.size(); ++i)
        out << (i + 1) << ": " << print_statement(d.steps[i].stm) << " ; "
            << print_justification(d.steps[i].just) << "\n";
    return out.str();
}

inline MldFile parse_mld(const std::string& text) {
    MldFile out;
    std::istringstream in(text);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t i = 0;
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] == '#') continue;
        if (line.compare(i, 7, "system ") == 0) {
            i += 7;
            detail::skip_ws(line, i);
            out.system = line.substr(i);
            while (!out.system.empty() && std::isspace((unsigned char)out.system.back()))
                out.system.pop_back();
            continue;
        }
        if (line.compare(i, 8, "premises") == 0) {
            i += 8;
            if (!detail::eat(line, i, '{')) throw ParseError("'{' expected", i);
            detail::skip_ws(line, i);
            if (!detail::eat(line, i, '}')) {
                while (true) {
                    out.derivation.premises.push_back(parse_statement_prefix(line, i));
                    if (detail::eat(line, i, ',')) continue;
                    if (detail::eat(line, i, '}')) break;
                    throw ParseError("',' or '}' expected in premises", i);
                }
            }
            continue;
        }
        // numbered step: n: <stmt> ; <just>
        size_t start = i;
        while (i < line.size() && std::isdigit((unsigned char)line[i])) ++i;
        if (i == start) throw ParseError("step number expected", start);
        size_t num = std::stoul(line.substr(start, i - start));
        if (!detail::eat(line, i, ':')) throw ParseError("':' expected", i);
        if (num != out.derivation.steps.size() + 1)
            throw ParseError("steps must be numbered consecutively from 1", start);
        Stm stm = parse_statement_prefix(line, i);
        if (!detail::eat(line, i, ';')) throw ParseError("';' expected", i);
        Justification just = parse_justification(line, i);
        out.derivation.steps.push_back({stm, std::move(just)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// Calculus files (.mlc)

inline std::string print_mlc(const DeductiveSystem& ds) {
    std::ostringstream out;
    out << "system " << ds.name << "\n";
    out << "signature {";
    for (size_t i = 0; i < ds.signature.connectives.size(); ++i)
        out << (i ? ", " : " ") << ds.signature.connectives[i].first << ":"
            << ds.signature.connectives[i].second;
    out << " }\n";
    if (!ds.allow_rs) out << "no-rs\n";
    for (auto& [id, st] : ds.axioms) out << "axiom " << id << ": " << print_statement(st) << "\n";
    for (auto& [id, st] : ds.rules) out << "rule " << id << ": " << print_statement(st) << "\n";
    return out.str();
}

inline DeductiveSystem parse_mlc(const std::string& text) {
    DeductiveSystem ds;
    std::istringstream in(text);
    std::string line;
    bool saw_signature = false;
    while (std::getline(in, line)) {
        size_t i = 0;
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] == '#') continue;
        if (line.compare(i, 7, "system ") == 0) {
            i += 7;
            detail::skip_ws(line, i);
            ds.name = line.substr(i);
            while (!ds.name.empty() && std::isspace((unsigned char)ds.name.back()))
                ds.name.pop_back();
            continue;
        }
        if (line.compare(i, 5, "no-rs") == 0) {
            ds.allow_rs = false;
            continue;
        }
        if (line.compare(i, 9, "signature") == 0) {
            i += 9;
            if (!detail::eat(line, i, '{')) throw ParseError("'{' expected", i);
            Signature sig;
            detail::skip_ws(line, i);
            if (!detail::eat(line, i, '}')) {
                while (true) {
                    detail::skip_ws(line, i);
                    size_t start = i;
                    while (i < line.size() && line[i] != ':' && line[i] != ' ') ++i;
                    std::string sym = line.substr(start, i - start);
                    if (sym.empty()) throw ParseError("connective expected", start);
                    if (!detail::eat(line, i, ':')) throw ParseError("':' expected", i);
                    detail::skip_ws(line, i);
                    start = i;
                    while (i < line.size() && std::isdigit((unsigned char)line[i])) ++i;
                    sig.connectives.push_back({sym, std::stoi(line.substr(start, i - start))});
                    if (detail::eat(line, i, ',')) continue;
                    if (detail::eat(line, i, '}')) break;
                    throw ParseError("',' or '}' expected in signature", i);
                }
            }
            ds.signature = sig;
            saw_signature = true;
            continue;
        }
        auto named_stmt = [&](const char* kw, size_t kwlen) -> std::pair<std::string, Stm> {
            (void)kw;
            i += kwlen;
            std::string id = detail::read_ident(line, i);
            if (!detail::eat(line, i, ':')) throw ParseError("':' expected", i);
            Stm st = parse_statement_prefix(line, i);
            return {id, st};
        };
        if (line.compare(i, 6, "axiom ") == 0) {
            ds.axioms.push_back(named_stmt("axiom", 6));
            continue;
        }
        if (line.compare(i, 5, "rule ") == 0) {
            ds.rules.push_back(named_stmt("rule", 5));
            continue;
        }
        throw ParseError("unrecognized line in calculus file", i);
    }
    (void)saw_signature;
    return ds;
}

// ---------------------------------------------------------------------------
// Relation files

struct RelationFile {
    AtomUniverse universe;
    std::vector<SeedPair> pairs;
};

inline std::string print_relation_file(const RelationTable& rel) {
    std::ostringstream out;
    out << "universe { ";
    for (size_t i = 0; i < rel.universe.atoms.size(); ++i)
        out << (i ? ", " : "") << print_statement(rel.universe.atoms[i]);
    out << " }\n";
    size_t n = rel.universe.atoms.size();
    auto side = [&](AtomSet m) {
        std::string s = "{";
        bool first = true;
        for (size_t i = 0; i < n; ++i)
            if (m & (AtomSet{1} << i)) {
                if (!first) s += ", ";
                first = false;
                s += print_statement(rel.universe.atoms[i]);
            }
        return s + "}";
    };
    for (AtomSet g = 0; g < (AtomSet{1} << n); ++g)
        for (AtomSet d = 0; d < (AtomSet{1} << n); ++d)
            if (rel.holds(g, d)) out << side(g) << " |- " << side(d) << "\n";
    return out.str();
}

inline RelationFile parse_relation_file(const std::string& text) {
    RelationFile out;
    std::vector<Stm> atoms;
    std::istringstream in(text);
    std::string line;
    bool have_universe = false;
    auto parse_side = [&](const std::string& s, size_t& i) -> std::vector<Stm> {
        std::vector<Stm> side;
        if (!detail::eat(s, i, '{')) throw ParseError("'{' expected", i);
        detail::skip_ws(s, i);
        if (detail::eat(s, i, '}')) return side;
        while (true) {
            side.push_back(parse_statement_prefix(s, i));
            if (detail::eat(s, i, ',')) continue;
            if (detail::eat(s, i, '}')) return side;
            throw ParseError("',' or '}' expected", i);
        }
    };
    while (std::getline(in, line)) {
        size_t i = 0;
        detail::skip_ws(line, i);
        if (i >= line.size() || line[i] == '#') continue;
        if (line.compare(i, 8, "universe") == 0) {
            i += 8;
            atoms = parse_side(line, i);
            out.universe = AtomUniverse(atoms);
            have_universe = true;
            continue;
        }
        if (!have_universe) throw ParseError("universe header required first", i);
        std::vector<Stm> gamma = parse_side(line, i);
        detail::skip_ws(line, i);
        if (line.compare(i, 2, "|-") != 0) throw ParseError("'|-' expected", i);
        i += 2;
        std::vector<Stm> delta = parse_side(line, i);
        out.pairs.push_back({out.universe.mask_of(gamma), out.universe.mask_of(delta)});
    }
    if (!have_universe) throw ParseError("universe header required", 0);
    return out;
}

// ---------------------------------------------------------------------------
// Rule files: {<stmt>, ...} / {<stmt>, ...}

inline RuleForm parse_rule_form(const std::string& text) {
    size_t i = 0;
    auto parse_side = [&](std::set<Stm, AtomLess>& side) {
        if (!detail::eat(text, i, '{')) throw ParseError("'{' expected", i);
        detail::skip_ws(text, i);
        if (detail::eat(text, i, '}')) return;
        while (true) {
            side.insert(parse_statement_prefix(text, i));
            if (detail::eat(text, i, ',')) continue;
            if (detail::eat(text, i, '}')) return;
            throw ParseError("',' or '}' expected", i);
        }
    };
    RuleForm r;
    parse_side(r.premises);
    if (!detail::eat(text, i, '/')) throw ParseError("'/' expected", i);
    parse_side(r.conclusions);
    return r;
}

}  // namespace mlk
