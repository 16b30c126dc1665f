#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sys/stat.h>
#include <sys/wait.h>
#include <unistd.h>

#include "mgc/formula_parser.hpp"
#include "mgc/parser.hpp"
#include "mgc/translate.hpp"

using namespace mgc;

namespace {

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    std::string cmd = std::string(MGC_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    int status = pclose(pipe);
    return RunResult{WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents, const char* suffix = ".lp") {
        static int counter = 0;
        path = "/tmp/mgc_cli_" + std::to_string(getpid()) + "_" + std::to_string(counter++) +
               suffix;
        std::ofstream out(path);
        out << contents;
    }
    ~TempFile() { unlink(path.c_str()); }
};

const char* kA = "p(a).\nq(Y) :- count{X : p(X), X != a} = Y.\n";
const char* kB = "p(a).\nq(Y-1) :- count{X : p(X)} = Y.\n";

}  // namespace

TEST_CASE("translate prints rules and families") {
    TempFile a(kA);
    RunResult r = run_cli("translate " + a.path + " --ascii");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("rule_1: forall Z (Z = a -> p(Z))") != std::string::npos);
    CHECK(r.output.find("atleast_") != std::string::npos);

    RunResult simp = run_cli("translate " + a.path + " --ascii --simplify");
    CHECK(simp.output.find("rule_1: p(a)") != std::string::npos);

    RunResult tff = run_cli("translate " + a.path + " --format tff");
    CHECK(tff.exit_code == 0);
    CHECK(tff.output.find("tff(rule_1, axiom,") != std::string::npos);

    RunResult fam = run_cli("translate " + a.path + " --full-families");
    CHECK(fam.exit_code == 0);
    CHECK(fam.output.find("Atleast^{X;}_{") != std::string::npos);
}

TEST_CASE("oracle exit codes distinguish the verdicts") {
    TempFile a(kA), b(kB);
    RunResult eq = run_cli("oracle " + a.path + " " + b.path + " --universe a,b,-2..2");
    CHECK(eq.exit_code == 0);
    CHECK(eq.output.find("\"verdict\": \"Equivalent\"") != std::string::npos);

    TempFile p1("p :- not q.\n"), p2("q :- not p.\n");
    RunResult ne = run_cli("oracle " + p1.path + " " + p2.path);
    CHECK(ne.exit_code == 1);
    CHECK(ne.output.find("\"verdict\": \"Counterexample\"") != std::string::npos);
    CHECK(ne.output.find("\"there\"") != std::string::npos);

    RunResult serial = run_cli("oracle " + p1.path + " " + p2.path + " --serial");
    CHECK(serial.exit_code == 1);
}

TEST_CASE("axioms dump prints the family axiom groups") {
    TempFile a(kA);
    RunResult r = run_cli("axioms dump --program " + a.path + " --ascii --with-defs 0..1");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("D0:") != std::string::npos);
    CHECK(r.output.find("D1:") != std::string::npos);
    CHECK(r.output.find("Defs:") != std::string::npos);

    RunResult missing = run_cli("axioms dump nonexistent --program " + a.path);
    CHECK(missing.exit_code == 3);
}

TEST_CASE("emit writes a problem file") {
    TempFile a(kA), b(kB);
    std::string out = "/tmp/mgc_cli_problem_" + std::to_string(getpid()) + ".p";
    RunResult r = run_cli("emit " + a.path + " " + b.path + " -o " + out);
    CHECK(r.exit_code == 0);
    std::ifstream in(out);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(text.find("tff(con, conjecture,") != std::string::npos);
    unlink(out.c_str());
}

TEST_CASE("emit accepts extra induction formulas") {
    TempFile a(kA), b(kB);
    // Reconstruct the family digest the CLI will use.
    auto reg = std::make_shared<FamilyRegistry>();
    tau_star_program(desugar_count_eq(parse_program(kA)), *reg);
    tau_star_program(desugar_count_eq(parse_program(kB)), *reg);
    std::string name = family_name(PredKind::Start, *reg, 0);
    TempFile ind("forall X (" + name + "(X, N+1) -> " + name + "(X, N))\n", ".ind");
    RunResult r = run_cli("emit " + a.path + " " + b.path + " --ind " + ind.path + " -o -");
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("gamma_ind") != std::string::npos);
}

TEST_CASE("verify without a prover is inconclusive") {
    TempFile a(kA), b(kB);
    RunResult r = run_cli("verify " + a.path + " " + b.path + " --universe a,b,-2..2 --json");
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("\"status\": \"Inconclusive\"") != std::string::npos);
    CHECK(r.output.find("no prover") != std::string::npos);
}

TEST_CASE("verify with a fake prover proves and refutes") {
    TempFile a(kA), b(kB);
    std::string script = "/tmp/mgc_cli_prover_" + std::to_string(getpid()) + ".sh";
    {
        std::ofstream out(script);
        out << "#!/bin/sh\necho '% SZS status Theorem'\n";
    }
    chmod(script.c_str(), 0755);

    RunResult proved = run_cli("verify " + a.path + " " + b.path +
                               " --universe a,b,-2..2 --prover " + script);
    CHECK(proved.exit_code == 0);
    CHECK(proved.output.find("ProvedEquivalent") != std::string::npos);

    TempFile p1("p :- not q.\n"), p2("q :- not p.\n");
    RunResult refuted = run_cli("verify " + p1.path + " " + p2.path + " --prover " + script);
    CHECK(refuted.exit_code == 1);
    CHECK(refuted.output.find("CounterexampleFound") != std::string::npos);
    CHECK(refuted.output.find("here={}") != std::string::npos);
    CHECK(refuted.output.find("there={p}") != std::string::npos);
    unlink(script.c_str());
}

TEST_CASE("parse errors and impurity surface with positions and exit code 3") {
    TempFile bad("p(a)\nq :- r.\n");  // missing dot
    RunResult r = run_cli("translate " + bad.path);
    CHECK(r.exit_code == 3);
    CHECK(r.output.find(":2:") != std::string::npos);

    TempFile impure("q(Y) :- count{X : p(X)} = Y, X > 0.\n");
    RunResult imp = run_cli("oracle " + impure.path + " " + impure.path);
    CHECK(imp.exit_code == 3);
    CHECK(imp.output.find("not pure") != std::string::npos);
    CHECK(imp.output.find("X") != std::string::npos);
}

TEST_CASE("formula parser reads the printed notation") {
    auto reg = std::make_shared<FamilyRegistry>();
    tau_star_program(desugar_count_eq(parse_program(kA)), *reg);
    std::string start = family_name(PredKind::Start, *reg, 0);
    std::string atleast = family_name(PredKind::Atleast, *reg, 0);

    FormulaPtr f = parse_formula(
        "forall X N (" + start + "(X, N + 1) -> " + start + "(X, N))", *reg);
    CHECK(free_vars(f).empty());
    std::set<PredRef> preds;
    collect_preds(f, preds);
    REQUIRE(preds.size() == 1);
    CHECK(preds.begin()->kind == PredKind::Start);
    CHECK(preds.begin()->arity == 2);

    FormulaPtr g = parse_formula("exists N Y (N >= 1 & not q(Y) & " + atleast + "(Y))", *reg);
    CHECK(free_vars(g).empty());
    CHECK(contains_iff(parse_formula("p <-> q", *reg)));
    CHECK_THROWS(parse_formula("atleast_zzzzzz(X)", *reg));
    CHECK_THROWS(parse_formula("forall (p)", *reg));
}
