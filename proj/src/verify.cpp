#include "mgc/verify.hpp"

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <unistd.h>

#include "mgc/translate.hpp"

namespace mgc {

const char* verify_status_str(VerifyStatus s) {
    switch (s) {
        case VerifyStatus::CounterexampleFound: return "CounterexampleFound";
        case VerifyStatus::ProvedEquivalent: return "ProvedEquivalent";
        case VerifyStatus::Inconclusive: return "Inconclusive";
    }
    return "?";
}

bool pair_distinguishes(const Program& p1, const Program& p2, const Universe& u,
                        const HTPair& pair, const OracleOptions& opts) {
    auto registry = std::make_shared<FamilyRegistry>();
    FormulaPtr f1 = tau_star_program(desugar_count_eq(p1), *registry);
    FormulaPtr f2 = tau_star_program(desugar_count_eq(p2), *registry);
    std::vector<PredRef> preds;
    for (const auto& [name, arity] : collect_predicates(p1))
        preds.push_back(PredRef{PredKind::Plain, name, arity, -1, false});
    for (const auto& [name, arity] : collect_predicates(p2))
        preds.push_back(PredRef{PredKind::Plain, name, arity, -1, false});
    AtomTable atoms = AtomTable::build(preds, u);
    GroundOptions gopts;
    gopts.margin = opts.margin.value_or(
        std::max(auto_margin(f1, u, registry.get()), auto_margin(f2, u, registry.get())));
    auto [g1, g2] = ground_pair(f1, f2, u, atoms, registry.get(), gopts);
    return ht_sat(pair, g1) != ht_sat(pair, g2);
}

VerifyReport verify(const Program& p1, const Program& p2, const VerifyOptions& opts) {
    auto t0 = std::chrono::steady_clock::now();
    VerifyReport report;

    Universe u = opts.universe ? *opts.universe : Universe::default_for(p1, p2);
    report.oracle = check_strong_equivalence(p1, p2, u, opts.oracle);

    if (!report.oracle.equivalent) {
        const Counterexample& cex = *report.oracle.counterexample;
        HTPair pair{cex.here_mask, cex.there_mask};
        if (!pair_distinguishes(p1, p2, u, pair, opts.oracle))
            throw std::logic_error("counterexample failed its HT re-check");
        report.status = VerifyStatus::CounterexampleFound;
        auto t1 = std::chrono::steady_clock::now();
        report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return report;
    }

    report.note = "oracle found no counterexample up to universe " + report.oracle.universe;

    if (!opts.prover) {
        report.status = VerifyStatus::Inconclusive;
        report.note += "; no prover configured";
        auto t1 = std::chrono::steady_clock::now();
        report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        return report;
    }

    Problem problem = build_problem(p1, p2, opts.build);
    std::string text = emit_problem(problem);
    std::string path = opts.problem_path;
    if (path.empty()) {
        char tmpl[] = "/tmp/mgc_problem_XXXXXX";
        int fd = mkstemp(tmpl);
        if (fd < 0) throw std::runtime_error("cannot create temporary problem file");
        close(fd);
        path = tmpl;
    }
    {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write problem file " + path);
        out << text;
    }
    report.problem_path = path;

    report.prover = run_prover(path, *opts.prover);
    report.status = report.prover->status == ProverStatus::Theorem
                        ? VerifyStatus::ProvedEquivalent
                        : VerifyStatus::Inconclusive;
    if (report.status == VerifyStatus::Inconclusive)
        report.note += std::string("; prover status ") + status_str(report.prover->status);

    auto t1 = std::chrono::steady_clock::now();
    report.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return report;
}

}  // namespace mgc
