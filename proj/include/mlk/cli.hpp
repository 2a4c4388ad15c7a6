#pragma once

// Batch command-line front end.
//
//   check      -s <system> -d <file.mld>        verify a derivation
//   prove      -s <system> "<formula>"          certificate for +A
//   refute     -s <system> "<formula>"          certificate for -A
//   decide     -s <system> "<formula>"          sign + certificate
//   normalize  "<statement>"                    rule-form clauses
//   admissible --rule <file> --depth --vars     bounded counterexample search
//   matrix     --bits <m> --rule <file>         local matrix validity
//   saturate   -s <system> --size --vars        closure audit
//   classify   -r <relation file>               logic classification flags
//
// Exit codes: 0 success/accepted, 2 rejected (with step and reason),
// 3 parse error (with position), 4 resource cap exceeded.
//
// `-s` accepts a built-in name (lukasiewicz, classical, disjunction, smiley,
// smiley-anti, rk<N>) or a path to a .mlc file. Lemmas named `cpc.<formula>`
// or `kal.<bits>.<formula>` are certified on demand; set MLK_LEMMA_DIR to
// persist them between runs.
// Output is deterministic; `--json` switches to a stable machine format.
// `--seed` only permutes the exploration order of proof search.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "search.hpp"
#include "serialize.hpp"

namespace mlk {
namespace cli {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << text;
}

// Resolves `-s`: built-in name or .mlc path. Parsed systems are cached so
// that references (and the per-system lemma store) stay valid.
inline const DeductiveSystem& resolve_system(const std::string& name) {
    if (name == "lukasiewicz") return lukasiewicz_core();
    if (name == "classical") return classical_extended();
    if (name == "disjunction") return with_disjunction_rule();
    if (name == "smiley") return smiley_system();
    if (name == "smiley-anti") return smiley_with_anti();
    if (name.rfind("rk", 0) == 0 && name.size() > 2 &&
        std::isdigit((unsigned char)name[2])) {
        static std::map<int, DeductiveSystem> rks;
        int n = std::stoi(name.substr(2));
        auto it = rks.find(n);
        if (it == rks.end()) it = rks.emplace(n, rk_system(n)).first;
        return it->second;
    }
    static std::map<std::string, DeductiveSystem> parsed;
    auto it = parsed.find(name);
    if (it == parsed.end()) it = parsed.emplace(name, parse_mlc(read_file(name))).first;
    return it->second;
}

// ---------------------------------------------------------------------------
// Lemma cache: cpc.<formula> lemmas certified on demand, optionally persisted
// under $MLK_LEMMA_DIR as .mld files with a tab-separated index.

inline std::string lemma_cache_dir() {
    const char* d = std::getenv("MLK_LEMMA_DIR");
    return d ? d : "";
}

inline void load_lemma_cache(const DeductiveSystem& ds, LemmaStore& store) {
    std::string dir = lemma_cache_dir();
    if (dir.empty()) return;
    std::ifstream idx(dir + "/index.txt");
    std::string line;
    while (std::getline(idx, line)) {
        size_t tab = line.find('\t');
        if (tab == std::string::npos) continue;
        std::string file = line.substr(0, tab), name = line.substr(tab + 1);
        if (store.find(name)) continue;
        try {
            MldFile f = parse_mld(read_file(dir + "/" + file));
            if (f.system != ds.name) continue;
            store.certify(name, ds, f.derivation);
        } catch (const std::exception&) {
            // a stale or foreign cache entry is skipped, never fatal
        }
    }
}

inline void save_lemma_cache_entry(const DeductiveSystem& ds, const std::string& name,
                                   const Derivation& d) {
    std::string dir = lemma_cache_dir();
    if (dir.empty()) return;
    std::ifstream idx(dir + "/index.txt");
    size_t n = 0;
    std::string line;
    while (std::getline(idx, line)) {
        ++n;
        size_t tab = line.find('\t');
        if (tab != std::string::npos && line.substr(tab + 1) == name) return;
    }
    std::string file = "lemma-" + std::to_string(n + 1) + ".mld";
    write_file(dir + "/" + file, print_mld(ds.name, d));
    std::ofstream app(dir + "/index.txt", std::ios::app);
    app << file << "\t" << name << "\n";
}

// Certifies every derived lemma a derivation references so it can be checked
// in a fresh process:
//   cpc.<formula>        — from the on-disk cache when available, otherwise
//                          freshly proved (the formula must be a tautology or
//                          checking would fail anyway)
//   kal.<bits>.<formula> — truth lemma of the Kalmar prover, rebuilt on
//                          demand (cheap; not persisted)
inline void ensure_derived_lemmas(const DeductiveSystem& ds, LemmaStore& store,
                                  const Derivation& d) {
    bool loaded = false;
    for (const Step& st : d.steps) {
        auto* l = std::get_if<JLemma>(&st.just);
        if (!l || store.find(l->name)) continue;
        if (l->name.rfind("cpc.", 0) == 0) {
            if (!loaded) {
                load_lemma_cache(ds, store);
                loaded = true;
                if (store.find(l->name)) continue;
            }
            Frm f;
            try {
                f = parse_formula(l->name.substr(4));
            } catch (const ParseError&) {
                continue;  // not a formula-shaped name; checker will report it
            }
            if (falsifying_valuation(f)) continue;  // not certifiable; let check fail
            Derivation proof = prove_tautology(f, ds);
            store.certify(l->name, ds, proof);
            save_lemma_cache_entry(ds, l->name, proof);
        } else if (l->name.rfind("kal.", 0) == 0) {
            size_t dot = l->name.find('.', 4);
            if (dot == std::string::npos) continue;
            std::string bits = l->name.substr(4, dot - 4);
            Frm f;
            try {
                f = parse_formula(l->name.substr(dot + 1));
            } catch (const ParseError&) {
                continue;
            }
            std::set<std::string> vset = vars_of(f);
            if (bits.size() != vset.size()) continue;  // malformed; let check fail
            Valuation val;
            size_t i = 0;
            for (const std::string& v : vset) val[v] = bits[i++] == '1';
            try {
                detail::ensure_truth_lemma(f, val, ds, store);
            } catch (const std::exception&) {
                // leave the lemma missing; the checker reports unknown-lemma
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Commands

struct Options {
    std::string system = "lukasiewicz";
    std::string derivation_file;
    std::string rule_file;
    std::string relation_file;
    std::string arg;         // formula or statement
    std::string out_file = "certificate.mld";
    int depth = 2, vars = 2, bits = 2, size = 5;
    unsigned seed = 0;
    bool json = false;
};

inline int cmd_check(const Options& o, std::ostream& out) {
    MldFile f = parse_mld(read_file(o.derivation_file));
    const DeductiveSystem& ds =
        resolve_system(o.system.empty() ? f.system : o.system);
    LemmaStore& store = lemmas_for(ds);
    ensure_derived_lemmas(ds, store, f.derivation);
    Verdict v = check_derivation(ds, f.derivation, store);
    if (o.json) {
        json j{{"accepted", v.accepted}};
        if (!v.accepted) {
            j["step"] = v.step + 1;
            j["reason"] = v.reason;
        }
        out << j.dump() << "\n";
    } else if (v.accepted) {
        out << "ACCEPTED\n";
    } else {
        out << "REJECTED\nstep: " << v.step + 1 << "\nreason: " << v.reason << "\n";
    }
    return v.accepted ? 0 : 2;
}

inline std::string valuation_text(const Valuation& v) {
    std::string s;
    for (auto& [var, b] : v) s += (s.empty() ? "" : " ") + var + "=" + (b ? "1" : "0");
    return s;
}

inline int cmd_prove(const Options& o, std::ostream& out) {
    const DeductiveSystem& ds = resolve_system(o.system);
    Frm f = parse_formula(o.arg);
    if (auto v = falsifying_valuation(f)) {
        if (o.json)
            out << json{{"proved", false}, {"falsifying", valuation_text(*v)}}.dump()
                << "\n";
        else
            out << "NOT A TAUTOLOGY\nfalsifying valuation: " << valuation_text(*v)
                << "\n";
        return 2;
    }
    Derivation d = prove_tautology(f, ds);
    write_file(o.out_file, print_mld(ds.name, d));
    if (o.json)
        out << json{{"proved", true}, {"steps", d.steps.size()},
                    {"certificate", o.out_file}}
                   .dump()
            << "\n";
    else
        out << "PROVED " << print_statement(d.conclusion()) << "\nsteps: "
            << d.steps.size() << "\ncertificate: " << o.out_file << "\n";
    return 0;
}

inline int cmd_refute(const Options& o, std::ostream& out) {
    const DeductiveSystem& ds = resolve_system(o.system);
    Frm f = parse_formula(o.arg);
    if (!falsifying_valuation(f)) {
        if (o.json)
            out << json{{"refuted", false}, {"reason", "tautology"}}.dump() << "\n";
        else
            out << "TAUTOLOGY\n";
        return 2;
    }
    Derivation d = refute(f, ds);
    write_file(o.out_file, print_mld(ds.name, d));
    if (o.json)
        out << json{{"refuted", true}, {"steps", d.steps.size()},
                    {"certificate", o.out_file}}
                   .dump()
            << "\n";
    else
        out << "REFUTED " << print_statement(d.conclusion()) << "\nsteps: "
            << d.steps.size() << "\ncertificate: " << o.out_file << "\n";
    return 0;
}

inline int cmd_decide(const Options& o, std::ostream& out) {
    const DeductiveSystem& ds = resolve_system(o.system);
    Frm f = parse_formula(o.arg);
    Certificate c = decide(f, ds);
    write_file(o.out_file, print_mld(ds.name, c.derivation));
    if (o.json)
        out << json{{"sign", c.asserted ? "asserted" : "rejected"},
                    {"steps", c.derivation.steps.size()},
                    {"certificate", o.out_file}}
                   .dump()
            << "\n";
    else
        out << (c.asserted ? "ASSERTED" : "REJECTED") << "\nsteps: "
            << c.derivation.steps.size() << "\ncertificate: " << o.out_file << "\n";
    return 0;
}

inline int cmd_normalize(const Options& o, std::ostream& out) {
    Stm s = parse_statement(o.arg);
    std::vector<RuleForm> clauses = to_rule_form(s);
    if (o.json) {
        json arr = json::array();
        for (auto& c : clauses) arr.push_back(print_rule_form(c));
        out << json{{"clauses", arr}}.dump() << "\n";
    } else {
        for (auto& c : clauses) out << print_rule_form(c) << "\n";
    }
    return 0;
}

inline int cmd_admissible(const Options& o, std::ostream& out) {
    RuleForm r = parse_rule_form(read_file(o.rule_file));
    AdmissibleReport rep = check_admissible_bounded(r, o.depth, o.vars);
    if (o.json) {
        json j{{"admissible", rep.admissible}};
        if (!rep.admissible) j["counterexample"] = print_substitution(rep.counterexample);
        out << j.dump() << "\n";
    } else if (rep.admissible) {
        out << "ADMISSIBLE (no counterexample, depth " << o.depth << ", vars "
            << o.vars << ")\n";
    } else {
        out << "COUNTEREXAMPLE\n" << print_substitution(rep.counterexample) << "\n";
    }
    return 0;
}

inline int cmd_matrix(const Options& o, std::ostream& out) {
    RuleForm r = parse_rule_form(read_file(o.rule_file));
    MatrixModel M(o.bits);
    std::map<std::string, uint32_t> w;
    bool valid = local_valid(r, M, &w);
    if (o.json) {
        json j{{"valid", valid}, {"bits", o.bits}};
        if (!valid) {
            json jw;
            for (auto& [v, x] : w) jw[v] = x;
            j["witness"] = jw;
        }
        out << j.dump() << "\n";
    } else if (valid) {
        out << "VALID (all valuations, " << o.bits << "-bit matrix)\n";
    } else {
        out << "INVALID\nwitness valuation:";
        for (auto& [v, x] : w) out << " " << v << "=" << x;
        out << "\n";
    }
    return 0;
}

inline int cmd_saturate(const Options& o, std::ostream& out) {
    const DeductiveSystem& ds = resolve_system(o.system);
    AuditReport rep = saturate_and_audit(ds, o.size, o.vars);
    if (o.json) {
        json arr = json::array();
        for (auto& f : rep.findings)
            arr.push_back({{"kind", f.kind}, {"witness", print_formula(f.witness)}});
        out << json{{"asserted", rep.asserted_count},
                    {"rejected", rep.rejected_count},
                    {"clean", rep.clean()},
                    {"findings", arr}}
                   .dump()
            << "\n";
    } else {
        out << "asserted: " << rep.asserted_count << "\nrejected: "
            << rep.rejected_count << "\n";
        if (rep.clean()) {
            out << "clean: no ambivalence, no unsound signs\n";
        } else {
            for (auto& f : rep.findings)
                out << f.kind << ": " << print_formula(f.witness) << "\n";
        }
    }
    return rep.clean() ? 0 : 2;
}

inline int cmd_classify(const Options& o, std::ostream& out) {
    RelationFile rf = parse_relation_file(read_file(o.relation_file));
    RelationTable rel = generate_relation(rf.pairs, rf.universe);
    LogicPair L = logic_of_relation(rel);
    std::set<Frm> universe;
    for (Stm a : rf.universe.atoms) universe.insert(a->body);
    LogicClass c = classify(L, universe);
    auto flag = [](bool b) { return b ? "yes" : "no"; };
    if (o.json) {
        out << json{{"coherent", c.coherent},
                    {"full", c.full},
                    {"standard", c.standard},
                    {"trivial", c.trivial},
                    {"degenerate", c.degenerate}}
                   .dump()
            << "\n";
    } else {
        out << "coherent: " << flag(c.coherent) << "\nfull: " << flag(c.full)
            << "\nstandard: " << flag(c.standard) << "\ntrivial: " << flag(c.trivial)
            << "\ndegenerate: " << flag(c.degenerate) << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"meta-logic kernel: derivation checking, certificate-producing "
                 "decision procedure, rule normalization and audits"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* c) {
        c->add_flag("--json", o.json, "machine-readable output");
        c->add_option("--seed", o.seed, "proof-search exploration seed");
    };
    auto add_system = [&](CLI::App* c) {
        c->add_option("-s,--system", o.system, "built-in system name or .mlc file");
    };

    CLI::App* check = app.add_subcommand("check", "verify a derivation file");
    add_system(check);
    check->add_option("-d,--derivation", o.derivation_file, ".mld file")->required();
    add_common(check);

    CLI::App* prove = app.add_subcommand("prove", "certificate for an asserted formula");
    add_system(prove);
    prove->add_option("formula", o.arg)->required();
    prove->add_option("-o,--out", o.out_file, "certificate file");
    add_common(prove);

    CLI::App* refutec = app.add_subcommand("refute", "certificate for a rejected formula");
    add_system(refutec);
    refutec->add_option("formula", o.arg)->required();
    refutec->add_option("-o,--out", o.out_file, "certificate file");
    add_common(refutec);

    CLI::App* decidec = app.add_subcommand("decide", "decide and certify a formula");
    add_system(decidec);
    decidec->add_option("formula", o.arg)->required();
    decidec->add_option("-o,--out", o.out_file, "certificate file");
    add_common(decidec);

    CLI::App* norm = app.add_subcommand("normalize", "statement to rule-form clauses");
    norm->add_option("statement", o.arg)->required();
    add_common(norm);

    CLI::App* adm = app.add_subcommand("admissible", "bounded admissibility search");
    adm->add_option("--rule", o.rule_file, "rule file: {premises} / {conclusions}")
        ->required();
    adm->add_option("--depth", o.depth, "max connectives per substituted formula");
    adm->add_option("--vars", o.vars, "variables in the substitution universe");
    add_common(adm);

    CLI::App* mat = app.add_subcommand("matrix", "local validity in a Boolean matrix");
    mat->add_option("--bits", o.bits, "matrix bit width (carrier 2^bits)");
    mat->add_option("--rule", o.rule_file, "rule file")->required();
    add_common(mat);

    CLI::App* sat = app.add_subcommand("saturate", "closure audit of a system");
    add_system(sat);
    sat->add_option("--size", o.size, "max formula size (node count)");
    sat->add_option("--vars", o.vars, "variables in the universe");
    add_common(sat);

    CLI::App* cls = app.add_subcommand("classify", "classify the logic of a relation");
    cls->add_option("-r,--relation", o.relation_file, "relation file")->required();
    add_common(cls);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (check->parsed()) return cmd_check(o, out);
        if (prove->parsed()) return cmd_prove(o, out);
        if (refutec->parsed()) return cmd_refute(o, out);
        if (decidec->parsed()) return cmd_decide(o, out);
        if (norm->parsed()) return cmd_normalize(o, out);
        if (adm->parsed()) return cmd_admissible(o, out);
        if (mat->parsed()) return cmd_matrix(o, out);
        if (sat->parsed()) return cmd_saturate(o, out);
        if (cls->parsed()) return cmd_classify(o, out);
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const ResourceError& e) {
        err << "resource cap: " << e.what() << "\n";
        return 4;
    } catch (const SignatureError& e) {
        err << "signature error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

}  // namespace cli
}  // namespace mlk
