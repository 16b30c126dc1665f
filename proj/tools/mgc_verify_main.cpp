// mgc-verify: strong-equivalence toolkit for mini-gringo programs with
// counting. Subcommands: translate, axioms dump, oracle, emit, verify.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mgc/axioms.hpp"
#include "mgc/emit.hpp"
#include "mgc/formula_parser.hpp"
#include "mgc/oracle.hpp"
#include "mgc/parser.hpp"
#include "mgc/translate.hpp"
#include "mgc/verify.hpp"

using json = nlohmann::json;

namespace {

constexpr int kExitEquivalent = 0;
constexpr int kExitCounterexample = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitInputError = 3;
constexpr int kExitInternalError = 4;

std::string slurp_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

mgc::Program load_program(const std::string& path) {
    try {
        return mgc::parse_program(slurp_file(path));
    } catch (const mgc::ParseError& e) {
        std::ostringstream os;
        os << path << ":" << e.line << ":" << e.col << ": " << e.what();
        throw std::runtime_error(os.str());
    }
}

void check_programs_pure(const mgc::Program& prog, const std::string& path) {
    for (std::size_t i = 0; i < prog.rules.size(); ++i) {
        if (auto imp = mgc::check_pure(prog.rules[i])) {
            std::ostringstream os;
            os << path << ": rule " << i + 1 << " is not pure: variable " << imp->variable
               << " in an aggregate element is global";
            throw std::runtime_error(os.str());
        }
    }
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
    auto dots = text.find("..");
    if (dots == std::string::npos) {
        std::int64_t v = std::stoll(text);
        return {v, v};
    }
    return {std::stoll(text.substr(0, dots)), std::stoll(text.substr(dots + 2))};
}

std::vector<mgc::FormulaPtr> load_ind_file(const std::string& path,
                                           const mgc::FamilyRegistry& reg) {
    std::vector<mgc::FormulaPtr> out;
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    while (std::getline(in, line)) {
        std::string trimmed = line.substr(line.find_first_not_of(" \t") == std::string::npos
                                              ? line.size()
                                              : line.find_first_not_of(" \t"));
        if (trimmed.empty() || trimmed[0] == '%') continue;
        out.push_back(mgc::parse_formula(trimmed, reg));
    }
    return out;
}

json oracle_json(const mgc::EquivalenceReport& r) {
    json j;
    j["verdict"] = r.equivalent ? "Equivalent" : "Counterexample";
    j["universe"] = r.universe;
    j["atoms"] = r.atom_count;
    j["margin"] = r.margin;
    j["pairs_checked"] = r.pairs_checked;
    j["elapsed_ms"] = r.elapsed_ms;
    j["warnings"] = r.warnings;
    if (r.counterexample) {
        j["counterexample"] = {{"here", r.counterexample->here},
                               {"there", r.counterexample->there}};
    }
    return j;
}

struct TranslateArgs {
    std::string file;
    bool simplify = false;
    bool ascii = false;
    bool full_families = false;
    std::string format = "paper";
};

int run_translate(const TranslateArgs& args) {
    mgc::Program prog = load_program(args.file);
    check_programs_pure(prog, args.file);
    auto registry = std::make_shared<mgc::FamilyRegistry>();
    mgc::Program desugared = mgc::desugar_count_eq(prog);

    std::vector<std::pair<std::string, mgc::FormulaPtr>> sentences;
    for (std::size_t i = 0; i < desugared.rules.size(); ++i) {
        mgc::FormulaPtr f = mgc::tau_star_rule(desugared.rules[i], *registry);
        if (args.simplify) f = mgc::simplify_equalities(f);
        sentences.emplace_back("rule_" + std::to_string(i + 1), f);
    }

    if (args.format == "tff") {
        std::vector<std::pair<std::string, mgc::FormulaPtr>> lowered;
        for (auto& [name, f] : sentences) lowered.emplace_back(name, mgc::lower_iff(f));
        std::cout << mgc::emit_sentences(lowered, registry.get());
        return kExitEquivalent;
    }

    mgc::PrintStyle style;
    style.unicode = !args.ascii;
    style.registry = registry.get();
    style.inline_families = args.full_families;
    for (const auto& [name, f] : sentences)
        std::cout << name << ": " << to_string(f, style) << "\n";
    if (registry->size() > 0 && !args.full_families) {
        std::cout << "\n% predicate families (X;V;F)\n";
        for (int id = 0; id < registry->size(); ++id) {
            const mgc::PredicateFamily& fam = registry->family(id);
            std::cout << "% " << family_name(mgc::PredKind::Atleast, *registry, id) << ": X=(";
            for (std::size_t i = 0; i < fam.x_vars.size(); ++i)
                std::cout << (i ? "," : "") << fam.x_vars[i];
            std::cout << ") V=(";
            for (std::size_t i = 0; i < fam.v_vars.size(); ++i)
                std::cout << (i ? "," : "") << fam.v_vars[i];
            std::cout << ") F = " << to_string(fam.body, style) << "\n";
        }
    }
    return kExitEquivalent;
}

struct AxiomsArgs {
    std::string program;
    std::string family;  // digest or full name; empty = all
    std::string defs_range;
    bool ascii = false;
};

int run_axioms_dump(const AxiomsArgs& args) {
    mgc::Program prog = load_program(args.program);
    check_programs_pure(prog, args.program);
    auto registry = std::make_shared<mgc::FamilyRegistry>();
    mgc::tau_star_program(mgc::desugar_count_eq(prog), *registry);
    if (registry->size() == 0) {
        std::cout << "no aggregate families in " << args.program << "\n";
        return kExitEquivalent;
    }

    mgc::PrintStyle style;
    style.unicode = !args.ascii;
    style.registry = registry.get();

    bool found = false;
    for (int id = 0; id < registry->size(); ++id) {
        std::string name = family_name(mgc::PredKind::Atleast, *registry, id);
        std::string digest = registry->family(id).digest;
        if (!args.family.empty() && args.family != digest &&
            args.family != name && args.family != "start_" + digest &&
            args.family != "atmost_" + digest)
            continue;
        found = true;
        std::cout << "% family " << digest << "\n";
        auto d0 = mgc::d0_axioms(*registry, id);
        for (const auto& ax : d0) std::cout << "D0: " << to_string(ax, style) << "\n";
        auto d1 = mgc::d1_axioms(*registry, id);
        std::cout << "D1: " << to_string(d1[0], style) << "\n";
        std::cout << "D1: " << to_string(d1[1], style) << "\n";
        if (!args.defs_range.empty()) {
            auto [lo, hi] = parse_range(args.defs_range);
            for (std::int64_t r = lo; r <= hi; ++r) {
                mgc::PrecomputedTerm bound = mgc::PrecomputedTerm::numeral(r);
                std::cout << "Defs: "
                          << to_string(mgc::defs_axiom(mgc::PredKind::Atleast, *registry, id,
                                                       bound), style)
                          << "\n";
                std::cout << "Defs: "
                          << to_string(mgc::defs_axiom(mgc::PredKind::Atmost, *registry, id,
                                                       bound), style)
                          << "\n";
            }
        }
    }
    if (!found) {
        std::cerr << "unknown family: " << args.family << "\n";
        return kExitInputError;
    }
    return kExitEquivalent;
}

struct OracleArgs {
    std::string file1, file2;
    std::string universe;
    int margin = -1;
    bool serial = false;
};

int run_oracle(const OracleArgs& args) {
    mgc::Program p1 = load_program(args.file1);
    mgc::Program p2 = load_program(args.file2);
    check_programs_pure(p1, args.file1);
    check_programs_pure(p2, args.file2);
    mgc::Universe u = args.universe.empty() ? mgc::Universe::default_for(p1, p2)
                                            : mgc::parse_universe(args.universe);
    mgc::OracleOptions opts;
    if (args.margin >= 0) opts.margin = args.margin;
    opts.serial = args.serial;
    mgc::EquivalenceReport r = mgc::check_strong_equivalence(p1, p2, u, opts);
    std::cout << oracle_json(r).dump(2) << "\n";
    return r.equivalent ? kExitEquivalent : kExitCounterexample;
}

struct EmitArgs {
    std::string file1, file2, output;
    std::string with_defs;
    std::string ind_file;
};

int run_emit(const EmitArgs& args) {
    mgc::Program p1 = load_program(args.file1);
    mgc::Program p2 = load_program(args.file2);
    mgc::BuildOptions build;
    if (!args.with_defs.empty()) build.with_defs = parse_range(args.with_defs);
    if (!args.ind_file.empty()) {
        // Families come from the translation; pre-register them so the
        // user's formulas can reference their digests.
        auto registry = std::make_shared<mgc::FamilyRegistry>();
        mgc::tau_star_program(mgc::desugar_count_eq(p1), *registry);
        mgc::tau_star_program(mgc::desugar_count_eq(p2), *registry);
        build.extra_ind = load_ind_file(args.ind_file, *registry);
    }
    mgc::Problem prob = mgc::build_problem(p1, p2, build);
    std::string text = mgc::emit_problem(prob);
    if (args.output.empty() || args.output == "-") {
        std::cout << text;
    } else {
        std::ofstream out(args.output);
        if (!out) throw std::runtime_error("cannot write " + args.output);
        out << text;
    }
    return kExitEquivalent;
}

struct VerifyArgs {
    std::string file1, file2;
    std::string universe;
    std::string prover;
    double timeout = 30.0;
    std::string prover_args;
    std::string with_defs;
    std::string ind_file;
    std::string keep_problem;
    int margin = -1;
    bool serial = false;
    bool as_json = false;
};

int run_verify(const VerifyArgs& args) {
    mgc::Program p1 = load_program(args.file1);
    mgc::Program p2 = load_program(args.file2);
    check_programs_pure(p1, args.file1);
    check_programs_pure(p2, args.file2);

    mgc::VerifyOptions opts;
    if (!args.universe.empty()) opts.universe = mgc::parse_universe(args.universe);
    if (args.margin >= 0) opts.oracle.margin = args.margin;
    opts.oracle.serial = args.serial;
    if (!args.with_defs.empty()) opts.build.with_defs = parse_range(args.with_defs);
    if (!args.ind_file.empty()) {
        auto registry = std::make_shared<mgc::FamilyRegistry>();
        mgc::tau_star_program(mgc::desugar_count_eq(p1), *registry);
        mgc::tau_star_program(mgc::desugar_count_eq(p2), *registry);
        opts.build.extra_ind = load_ind_file(args.ind_file, *registry);
    }
    opts.problem_path = args.keep_problem;

    std::string prover = args.prover;
    if (prover.empty()) {
        const char* env = std::getenv("MGC_PROVER");
        if (env && *env) prover = env;
    }
    if (!prover.empty()) {
        mgc::ProverConfig cfg;
        cfg.binary = prover;
        cfg.timeout_seconds = args.timeout;
        std::istringstream extra(args.prover_args);
        std::string word;
        while (extra >> word) cfg.extra_args.push_back(word);
        opts.prover = cfg;
    }

    mgc::VerifyReport report = mgc::verify(p1, p2, opts);

    if (args.as_json) {
        json j;
        j["status"] = mgc::verify_status_str(report.status);
        j["oracle"] = oracle_json(report.oracle);
        if (report.prover) {
            j["prover"] = {{"status", mgc::status_str(report.prover->status)},
                           {"elapsed_ms", report.prover->elapsed_ms},
                           {"detail", report.prover->detail}};
        }
        if (!report.problem_path.empty()) j["problem"] = report.problem_path;
        j["note"] = report.note;
        j["elapsed_ms"] = report.elapsed_ms;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "status: " << mgc::verify_status_str(report.status) << "\n";
        std::cout << "oracle: " << (report.oracle.equivalent ? "Equivalent" : "Counterexample")
                  << " over " << report.oracle.universe << " (" << report.oracle.pairs_checked
                  << " pairs, " << report.oracle.elapsed_ms << " ms)\n";
        if (report.oracle.counterexample) {
            auto render = [](const std::vector<std::string>& atoms) {
                std::string s = "{";
                for (std::size_t i = 0; i < atoms.size(); ++i)
                    s += (i ? ", " : "") + atoms[i];
                return s + "}";
            };
            std::cout << "counterexample: here=" << render(report.oracle.counterexample->here)
                      << " there=" << render(report.oracle.counterexample->there) << "\n";
        }
        for (const std::string& w : report.oracle.warnings) std::cout << "warning: " << w << "\n";
        if (report.prover) {
            std::cout << "prover: " << mgc::status_str(report.prover->status) << " ("
                      << report.prover->elapsed_ms << " ms)";
            if (!report.prover->detail.empty()) std::cout << " - " << report.prover->detail;
            std::cout << "\n";
        }
        if (!report.problem_path.empty())
            std::cout << "problem: " << report.problem_path << "\n";
        if (!report.note.empty()) std::cout << "note: " << report.note << "\n";
    }

    switch (report.status) {
        case mgc::VerifyStatus::ProvedEquivalent: return kExitEquivalent;
        case mgc::VerifyStatus::CounterexampleFound: return kExitCounterexample;
        case mgc::VerifyStatus::Inconclusive: return kExitInconclusive;
    }
    return kExitInternalError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"strong-equivalence toolkit for mini-gringo programs with counting"};
    app.require_subcommand(1);

    TranslateArgs targs;
    CLI::App* translate = app.add_subcommand("translate", "print the first-order translation");
    translate->add_option("file", targs.file, "program file")->required();
    translate->add_flag("--simplify", targs.simplify, "apply equality elimination");
    translate->add_flag("--ascii", targs.ascii, "ASCII connectives");
    translate->add_flag("--full-families", targs.full_families,
                        "render family predicates with their (X;V;F) descriptor");
    translate->add_option("--format", targs.format, "paper|tff")
        ->check(CLI::IsMember({"paper", "tff"}));

    AxiomsArgs aargs;
    CLI::App* axioms = app.add_subcommand("axioms", "axiom families");
    CLI::App* dump = axioms->add_subcommand("dump", "print a family's axioms");
    dump->add_option("family", aargs.family, "family name or digest (default: all)");
    dump->add_option("--program,-p", aargs.program, "program file defining the families")
        ->required();
    dump->add_option("--with-defs", aargs.defs_range, "Defs instance range, e.g. 0..3");
    dump->add_flag("--ascii", aargs.ascii, "ASCII connectives");

    OracleArgs oargs;
    CLI::App* oracle = app.add_subcommand("oracle", "brute-force equivalence check");
    oracle->add_option("file1", oargs.file1, "first program")->required();
    oracle->add_option("file2", oargs.file2, "second program")->required();
    oracle->add_option("--universe", oargs.universe, "universe, e.g. a,b,-2..4");
    oracle->add_option("--margin", oargs.margin, "grounding margin (default: automatic)");
    oracle->add_flag("--serial", oargs.serial, "use the serial reference kernel");

    EmitArgs eargs;
    CLI::App* emit = app.add_subcommand("emit", "write the classical prover problem");
    emit->add_option("file1", eargs.file1, "first program")->required();
    emit->add_option("file2", eargs.file2, "second program")->required();
    emit->add_option("--output,-o", eargs.output, "output path (default: stdout)");
    emit->add_option("--with-defs", eargs.with_defs, "include Defs instances, e.g. 0..3");
    emit->add_option("--ind", eargs.ind_file, "file of extra induction formulas");

    VerifyArgs vargs;
    CLI::App* verify = app.add_subcommand("verify", "oracle first, then the prover");
    verify->add_option("file1", vargs.file1, "first program")->required();
    verify->add_option("file2", vargs.file2, "second program")->required();
    verify->add_option("--universe", vargs.universe, "oracle universe");
    verify->add_option("--margin", vargs.margin, "oracle grounding margin");
    verify->add_flag("--serial", vargs.serial, "serial oracle kernel");
    verify->add_option("--prover", vargs.prover, "prover binary (default: $MGC_PROVER)");
    verify->add_option("--timeout", vargs.timeout, "prover wall clock in seconds");
    verify->add_option("--prover-args", vargs.prover_args, "extra prover arguments");
    verify->add_option("--with-defs", vargs.with_defs, "include Defs instances");
    verify->add_option("--ind", vargs.ind_file, "file of extra induction formulas");
    verify->add_option("--keep-problem", vargs.keep_problem, "write the problem file here");
    verify->add_flag("--json", vargs.as_json, "machine-readable report");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*translate) return run_translate(targs);
        if (*dump) return run_axioms_dump(aargs);
        if (*axioms) {
            std::cerr << "usage: mgc-verify axioms dump ...\n";
            return kExitInputError;
        }
        if (*oracle) return run_oracle(oargs);
        if (*emit) return run_emit(eargs);
        if (*verify) return run_verify(vargs);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternalError;
    }
    return kExitInputError;
}
