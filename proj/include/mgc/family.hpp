#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "mgc/fol.hpp"

namespace mgc {

// Descriptor for an Atleast/Atmost/Start predicate family parameterized by
// (X; V; F): X and V are disjoint tuples of distinct general variables and
// F is a formula over sigma_0 whose free variables lie in X union V.
// Atleast/Atmost have arity |V|+1 (all general); Start has arity |X|+|V|+1
// with an integer-sorted last argument.
struct PredicateFamily {
    std::vector<std::string> x_vars;
    std::vector<std::string> v_vars;
    FormulaPtr body;
    std::string digest;  // short collision-checked hash of the canonical key

    int count_arity() const { return static_cast<int>(v_vars.size()) + 1; }
    int start_arity() const { return static_cast<int>(x_vars.size() + v_vars.size()) + 1; }
};

// Interning registry: alpha-equivalent (X;V;F) descriptors get the same id.
// Insert-if-absent is atomic so translations may run concurrently.
struct FamilyRegistry {
    int intern(std::vector<std::string> x_vars, std::vector<std::string> v_vars, FormulaPtr body);

    const PredicateFamily& family(int id) const;
    int size() const;

    FamilyRegistry() = default;
    FamilyRegistry(const FamilyRegistry& other);
    FamilyRegistry& operator=(const FamilyRegistry&) = delete;

  private:
    mutable std::mutex mu_;
    std::vector<PredicateFamily> families_;
    std::vector<std::string> keys_;  // canonical key per id
};

using RegistryPtr = std::shared_ptr<FamilyRegistry>;

// Deterministic prover-legal identifier, injective up to alpha-equivalence
// of the descriptor: e.g. atleast_3f9a12 / atmost_3f9a12 / start_3f9a12.
std::string family_name(PredKind kind, const PredicateFamily& fam);
std::string family_name(PredKind kind, const FamilyRegistry& reg, int id);

FormulaPtr mk_family_atom(PredKind kind, const FamilyRegistry& reg, int id,
                          std::vector<FoTermPtr> args, bool primed = false);

}  // namespace mgc
