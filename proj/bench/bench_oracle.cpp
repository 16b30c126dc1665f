// Compares the serial reference against the specialized OpenMP kernel on
// the strong-equivalence pair search, over growing universes.
//
//   ./bench_oracle [max_window]

#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "mgc/oracle.hpp"
#include "mgc/parser.hpp"

using namespace mgc;

int main(int argc, char** argv) {
    // The serial reference needs minutes beyond window 3; pass a larger
    // bound explicitly to push further.
    int max_window = argc > 1 ? std::atoi(argv[1]) : 3;

    Program a = parse_program(
        "p(a).\n"
        "q(Y) :- count{X : p(X), X != a} = Y.\n");
    Program b = parse_program(
        "p(a).\n"
        "q(Y-1) :- count{X : p(X)} = Y.\n");

#ifdef _OPENMP
    std::printf("kernel threads: %d\n", omp_get_max_threads());
#else
    std::printf("kernel threads: 1 (OpenMP disabled)\n");
#endif
    std::printf("%-16s %6s %14s %12s %12s %9s\n", "universe", "atoms", "pairs", "serial ms",
                "kernel ms", "speedup");

    for (int hi = 2; hi <= max_window; ++hi) {
        std::string spec = "a,b,-2.." + std::to_string(hi);
        Universe u = parse_universe(spec);

        OracleOptions serial;
        serial.serial = true;
        EquivalenceReport rs = check_strong_equivalence(a, b, u, serial);

        EquivalenceReport rp = check_strong_equivalence(a, b, u);

        if (rs.equivalent != rp.equivalent || rs.pairs_checked != rp.pairs_checked) {
            std::printf("MISMATCH between serial and kernel results at %s\n", spec.c_str());
            return 1;
        }
        std::printf("%-16s %6d %14llu %12.1f %12.1f %8.1fx\n", spec.c_str(), rs.atom_count,
                    static_cast<unsigned long long>(rs.pairs_checked), rs.elapsed_ms,
                    rp.elapsed_ms, rs.elapsed_ms / rp.elapsed_ms);
    }
    return 0;
}
