#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgc/ast.hpp"
#include "mgc/axioms.hpp"
#include "mgc/family.hpp"
#include "mgc/fol.hpp"

namespace mgc {

// The reduction from here-and-there provability to classical provability:
//   gamma F = F for atomic F
//   gamma (not F) = not F'
//   gamma (F & G), gamma (F | G): homomorphic
//   gamma (F -> G) = (gamma F -> gamma G) & (F' -> G')
//   quantifiers: homomorphic
// The input must be free of <-> (lower_iff first) and of primed symbols.
FormulaPtr gamma(const FormulaPtr& f);

// Forall X (p(X) -> p'(X)) for every intensional predicate in use:
// plain program predicates plus the Atleast/Atmost/Start trio of every
// registered family. Comparisons are extensional and get no axiom.
std::vector<FormulaPtr> a_axioms(const FamilyRegistry& reg,
                                 const std::vector<PredRef>& plain_preds);

struct NamedAxiom {
    std::string role;  // a_axioms | gamma_ind | std | gamma_d0 | gamma_d1 | defs
    std::string name;
    FormulaPtr formula;
};

struct Problem {
    std::vector<NamedAxiom> axioms;
    FormulaPtr conjecture;  // (gamma F1 -> gamma F2) & (gamma F2 -> gamma F1)
    RegistryPtr registry;
    std::vector<PredRef> plain_preds;   // unprimed plain predicates in use
    std::set<std::string> constants;    // symbolic constants in use
    std::int64_t numeral_lo = 0;        // numeral range occurring in the problem
    std::int64_t numeral_hi = 0;
};

struct BuildOptions {
    // Include gamma(Defs) instances for numerals in [defs_lo, defs_hi].
    std::optional<std::pair<std::int64_t, std::int64_t>> with_defs;
    // Extra induction formulas (induction variable: N), e.g. parsed from a file.
    std::vector<FormulaPtr> extra_ind;
    bool heuristic_ind = true;
};

// Assembles the classical problem whose provability establishes strong
// equivalence: conjecture gamma tau* P1 <-> gamma tau* P2 plus the axioms
// A, gamma(Ind), Std, gamma D0 and gamma D1 for every family in use.
Problem build_problem(const Program& p1, const Program& p2, const BuildOptions& opts = {});

// Predicates/constants/numerals mentioned by a formula.
void collect_symbols(const FormulaPtr& f, std::set<PredRef>& preds,
                     std::set<std::string>& constants, std::int64_t& lo, std::int64_t& hi,
                     bool& any_numeral);

}  // namespace mgc
