#pragma once

#include <string>
#include <vector>

namespace mgc {

enum class ProverStatus { Theorem, CounterSatisfiable, Timeout, Unknown, Error };

const char* status_str(ProverStatus s);

struct ProverConfig {
    std::string binary;
    double timeout_seconds = 30.0;
    std::vector<std::string> extra_args;
};

struct ProverVerdict {
    ProverStatus status = ProverStatus::Error;
    double elapsed_ms = 0.0;
    std::string raw_output;  // combined stdout/stderr, capped
    std::string detail;      // failure explanation
};

// Runs the prover on the problem file with a wall-clock limit. The verdict
// is Theorem only when an "SZS status Theorem" line appears verbatim;
// Timeout/ResourceOut/GaveUp map to Timeout, as does a limit we enforce.
ProverVerdict run_prover(const std::string& problem_file, const ProverConfig& config);

}  // namespace mgc
