#pragma once

#include <string>
#include <vector>

#include "mgc/gamma.hpp"

namespace mgc {

// Serializes the problem as typed first-order text (TFF with integer
// arithmetic): a `general` sort plus $int, an int_to_gen injection with
// order-embedding axioms, one declaration per predicate and its primed
// twin (prefixes h_/t_ for the here/there worlds), role-named axioms, and
// the conjecture. Output is byte-identical across runs for equal inputs.
std::string emit_problem(const Problem& p);

// Sentences only (no conjecture), e.g. a program translation.
std::string emit_sentences(const std::vector<std::pair<std::string, FormulaPtr>>& named,
                           const FamilyRegistry* registry);

}  // namespace mgc
