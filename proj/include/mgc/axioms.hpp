#pragma once

#include <array>
#include <set>
#include <string>
#include <vector>

#include "mgc/family.hpp"
#include "mgc/fol.hpp"

namespace mgc {

// The three recursive axioms defining a Start predicate:
//   Forall X V N (N <= 0 -> Start(X,V,N))
//   Forall X V   (Start(X,V,1) <-> F)
//   Forall X V N (N > 0 -> (Start(X,V,N+1) <-> F & Exists U (X < U & Start(U,V,N))))
std::array<FormulaPtr, 3> d0_axioms(const FamilyRegistry& reg, int family);

// Atleast/Atmost in terms of Start:
//   Forall V Y (Atleast(V,Y) <-> Exists X N (Start(X,V,N) & N >= Y))
//   Forall V Y (Atmost(V,Y)  <-> Forall X N (Start(X,V,N) -> N <= Y))
std::array<FormulaPtr, 2> d1_axioms(const FamilyRegistry& reg, int family);

// Exists>=r X F: at least r values of X satisfy F.
//   r = n > 0                  : Exists X_1..X_n (/\ F^X_Xi & /\ not(Xi = Xj))
//   r <= 0                     : top
//   r above all numerals       : bottom
FormulaPtr exists_geq(const PrecomputedTerm& r, const std::vector<std::string>& xs,
                      const FormulaPtr& f);

// Exists<=r X F: at most r values of X satisfy F.
//   r = n >= 0                 : Forall X_1..X_{n+1} (/\ F^X_Xi -> \/ Xi = Xj)
//   r < 0                      : bottom
//   r above all numerals       : top
FormulaPtr exists_leq(const PrecomputedTerm& r, const std::vector<std::string>& xs,
                      const FormulaPtr& f);

// Defs instance for one bound: Forall V (Atleast(V,r) <-> Exists>=r X F),
// dually for Atmost. kind must be Atleast or Atmost.
FormulaPtr defs_axiom(PredKind kind, const FamilyRegistry& reg, int family,
                      const PrecomputedTerm& r);

// Universal closure of F^N_0 & Forall N (N >= 0 & F -> F^N_{N+1})
//                     -> Forall N (N >= 0 -> F).
FormulaPtr ind_instance(const FormulaPtr& f, const std::string& n_var);

// Atleast(args,t) & Atmost(args,t).
FormulaPtr exactly_formula(const FamilyRegistry& reg, int family,
                           std::vector<FoTermPtr> v_args, FoTermPtr bound);

struct StdOptions {
    std::set<std::string> constants;  // symbolic constants in use
    std::int64_t numeral_lo = 0;      // contiguity range in use
    std::int64_t numeral_hi = 0;
    bool order_axioms = true;         // total order of the general sort
    bool bridge_axioms = true;        // int_to_gen embedding
};

// Finite fragment of Std emitted alongside the prover's built-in integer
// arithmetic: general-sort order axioms, the int_to_gen embedding,
// distinctness and order of symbolic constants, every constant above all
// numerals, and contiguity over the used numeral range.
std::vector<FormulaPtr> std_theory(const StdOptions& opts);

// Heuristic induction instances generated for the Start families in the
// registry: downward monotonicity in the chain length, the shifted
// difference form, and cross-family transfer shapes for families whose
// X and V tuples have equal lengths.
std::vector<FormulaPtr> heuristic_ind_instances(const FamilyRegistry& reg);

}  // namespace mgc
