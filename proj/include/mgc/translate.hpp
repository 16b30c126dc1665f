#pragma once

#include <string>
#include <vector>

#include "mgc/ast.hpp"
#include "mgc/family.hpp"
#include "mgc/fol.hpp"

namespace mgc {

// Deterministic fresh-variable source. General variables come out as
// Z, Z1, Z2, ...; integer variables as I, J, K, I1, J1, K1, ...
// Each rule gets its own counter so printed translations are stable.
class FreshVars {
  public:
    FoTermPtr fresh_general();
    FoTermPtr fresh_integer();

  private:
    int gen_ = 0;
    int integer_ = 0;
};

// val t Z: "Z is a value of t". Z must not occur in t.
FormulaPtr val(const MgcTermPtr& t, const FoTermPtr& z, FreshVars& fresh);

// tau^B for literals and comparisons.
FormulaPtr tau_b(const MgcLiteral& lit, FreshVars& fresh);
FormulaPtr tau_b(const MgcComparison& cmp, FreshVars& fresh);
FormulaPtr tau_b(const Conjunct& c, FreshVars& fresh);

// The formula over sigma_1 representing an aggregate atom in the body of a
// pure rule. The family body is Exists W tau^B(L); V collects the global
// variables of L in first-occurrence order.
FormulaPtr tau_aggregate(const MgcAggregate& agg, const VariableClasses& classes,
                         FamilyRegistry& registry, FreshVars& fresh);

struct ImpurityError : std::runtime_error {
    Impurity impurity;
    explicit ImpurityError(Impurity i)
        : std::runtime_error("rule is not pure: variable " + i.variable +
                             " in an aggregate element is global"),
          impurity(std::move(i)) {}
};

// tau* of a single pure rule: a sentence over sigma_1. The rule must be
// desugared (no count = aggregates). Throws ImpurityError on impure rules.
FormulaPtr tau_star_rule(const Rule& rule, FamilyRegistry& registry);

// Conjunction of tau*R over the program's rules in source order; the empty
// program yields top.
FormulaPtr tau_star_program(const Program& prog, FamilyRegistry& registry);

// Equality elimination mirroring the manual simplification step:
//   Exists Z (Z = t & F)        =>  F^Z_t
//   Forall Z (... & Z = t & ... -> G)  =>  substituted implication
// Applied only when sorts allow the substitution.
FormulaPtr simplify_equalities(const FormulaPtr& f);

}  // namespace mgc
