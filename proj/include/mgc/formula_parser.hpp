#pragma once

#include <string>

#include "mgc/family.hpp"
#include "mgc/fol.hpp"

namespace mgc {

// Parses the ASCII formula notation the printers emit:
//   forall X N (p(X) & start_ab12cd(X, N+1) -> start_ab12cd(X, N))
// Connectives: not/~, &/and, |/or, ->, <->, #true, #false; comparisons
// =, !=, <, >, <=, >=; terms with + - * and |t|. Variables are
// uppercase; names starting with I..N are integer-sorted, everything
// else is general. Family atoms are written atleast_/atmost_/start_
// followed by the digest and resolve against the registry.
FormulaPtr parse_formula(const std::string& text, const FamilyRegistry& registry);

}  // namespace mgc
