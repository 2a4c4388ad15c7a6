#include <doctest.h>

#include <cstdio>
#include <sstream>

#include "mlk/cli.hpp"

using namespace mlk;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::vector<const char*> argv{"mlk"};
    for (auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = cli::run((int)argv.size(), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) {
    return std::string(MLK_FIXTURE_DIR) + "/" + name;
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& p, const std::string& content = "")
        : path(p) {
        if (!content.empty()) cli::write_file(path, content);
    }
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("check accepts the shipped fixtures") {
    CHECK(run({"check", "-s", "lukasiewicz", "-d", fixture("table1_l.mld")}).code == 0);
    auto r = run({"check", "-s", "lukasiewicz", "-d", fixture("table1_c.mld")});
    CHECK(r.code == 0);
    CHECK(r.out == "ACCEPTED\n");
}

TEST_CASE("check rejects each mutant with its reason code") {
    auto expects = [&](const char* file, const char* reason) {
        auto r = run({"check", "-s", "lukasiewicz", "-d", fixture(file), "--json"});
        CHECK(r.code == 2);
        CHECK(r.out.find(reason) != std::string::npos);
    };
    expects("mutant_sb_on_negative.mld", "sb-on-negative");
    expects("mutant_rs_on_positive.mld", "rs-on-positive");
    expects("mutant_wrong_sigma.mld", "substitution-mismatch");
    expects("mutant_dangling.mld", "dangling-reference");
    expects("mutant_bad_instance.mld", "bad-instance");
    expects("mutant_wrong_lemma.mld", "lemma-mismatch");
}

TEST_CASE("decide writes a certificate its own check accepts") {
    TempFile cert("test_cli_cert.mld");
    auto r = run({"decide", "-s", "lukasiewicz", "~p", "-o", cert.path});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("REJECTED", 0) == 0);
    CHECK(run({"check", "-s", "lukasiewicz", "-d", cert.path}).code == 0);

    auto r2 = run({"decide", "-s", "lukasiewicz", "(~p -> p) -> p", "-o", cert.path});
    CHECK(r2.code == 0);
    CHECK(r2.out.rfind("ASSERTED", 0) == 0);
    CHECK(run({"check", "-s", "lukasiewicz", "-d", cert.path}).code == 0);
}

TEST_CASE("identical invocations are byte-identical") {
    TempFile c1("test_cli_cert1.mld");
    auto r1 = run({"decide", "-s", "classical", "p | ~p", "-o", c1.path, "--json"});
    std::string first = cli::read_file(c1.path);
    auto r2 = run({"decide", "-s", "classical", "p | ~p", "-o", c1.path, "--json"});
    CHECK(r1.out == r2.out);
    CHECK(cli::read_file(c1.path) == first);
}

TEST_CASE("prove and refute exit 2 on the wrong side") {
    TempFile cert("test_cli_cert3.mld");
    auto r = run({"prove", "-s", "lukasiewicz", "~p", "-o", cert.path});
    CHECK(r.code == 2);
    CHECK(r.out.find("falsifying valuation: p=1") != std::string::npos);
    CHECK(run({"refute", "-s", "lukasiewicz", "p -> p", "-o", cert.path}).code == 2);
    CHECK(run({"prove", "-s", "lukasiewicz", "p -> p", "-o", cert.path}).code == 0);
    CHECK(run({"refute", "-s", "lukasiewicz", "~p", "-o", cert.path}).code == 0);
}

TEST_CASE("normalize matches the documented example") {
    auto r = run({"normalize", "NOT(+A AND -B) OR +C"});
    CHECK(r.code == 0);
    CHECK(r.out == "{+A, -B} / {+C}\n");
}

TEST_CASE("parse errors exit 3 with a location") {
    auto r = run({"decide", "-s", "lukasiewicz", "p ->"});
    CHECK(r.code == 3);
    CHECK(r.err.find("position") != std::string::npos);
    CHECK(run({"normalize", "+p AND"}).code == 3);
}

TEST_CASE("resource caps exit 4") {
    TempFile rule("test_cli_big.rule",
                  "{+(a1 | a2)} / {+a1, +a2, +a3, +a4, +a5, +a6, +a7, +a8, "
                  "+a9, +a10, +a11, +a12}\n");
    auto r = run({"matrix", "--bits", "16", "--rule", rule.path});
    CHECK(r.code == 4);
}

TEST_CASE("admissible and matrix commands") {
    TempFile rule("test_cli_disj.rule", "{+(A | B)} / {+A, +B}\n");
    auto r = run({"admissible", "--rule", rule.path, "--depth", "1", "--vars", "2"});
    CHECK(r.code == 0);
    CHECK(r.out == "COUNTEREXAMPLE\n{A:=p, B:=~p}\n");
    auto m = run({"matrix", "--bits", "2", "--rule", rule.path});
    CHECK(m.out.rfind("INVALID", 0) == 0);
    CHECK(run({"matrix", "--bits", "1", "--rule", rule.path}).out ==
          "VALID (all valuations, 1-bit matrix)\n");
}

TEST_CASE("saturate and classify commands") {
    auto r = run({"saturate", "-s", "lukasiewicz", "--size", "4", "--vars", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("clean") != std::string::npos);

    TempFile rel("test_cli_rel.txt",
                 "universe { +p, -q }\n{} |- {+p}\n{} |- {-q}\n");
    auto c = run({"classify", "-r", rel.path});
    CHECK(c.code == 0);
    CHECK(c.out.find("standard: yes") != std::string::npos);
}

TEST_CASE("a system can be supplied as a .mlc file") {
    TempFile mlc("test_cli_sys.mlc", print_mlc(lukasiewicz_core()));
    TempFile cert("test_cli_cert4.mld");
    auto r = run({"decide", "-s", mlc.path, "~p", "-o", cert.path});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("REJECTED", 0) == 0);
}
