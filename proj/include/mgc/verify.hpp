#pragma once

#include <optional>
#include <string>

#include "mgc/emit.hpp"
#include "mgc/oracle.hpp"
#include "mgc/prover.hpp"

namespace mgc {

enum class VerifyStatus { CounterexampleFound, ProvedEquivalent, Inconclusive };

const char* verify_status_str(VerifyStatus s);

struct VerifyOptions {
    std::optional<Universe> universe;  // default: Universe::default_for
    OracleOptions oracle;
    std::optional<ProverConfig> prover;  // absent: oracle only
    BuildOptions build;
    std::string problem_path;  // write the emitted problem here (optional)
};

struct VerifyReport {
    VerifyStatus status = VerifyStatus::Inconclusive;
    EquivalenceReport oracle;
    std::optional<ProverVerdict> prover;
    std::string problem_path;
    double elapsed_ms = 0.0;
    std::string note;
};

// Oracle first (cheap refutation), then the prover route. ProvedEquivalent
// requires a prover Theorem; CounterexampleFound requires a pair that
// re-checks under HT satisfaction.
VerifyReport verify(const Program& p1, const Program& p2, const VerifyOptions& opts);

// Double-check helper: do the two translations disagree at this pair?
bool pair_distinguishes(const Program& p1, const Program& p2, const Universe& u,
                        const HTPair& pair, const OracleOptions& opts);

}  // namespace mgc
