#pragma once

#include <memory>
#include <set>
#include <string>
#include <vector>

#include "mgc/precomputed.hpp"

namespace mgc {

// ---------------------------------------------------------------------------
// Two-sorted terms over sigma_0: sort general with subsort integer.
// Arithmetic is restricted to integer-sorted terms; an integer term is
// accepted wherever a general term is expected, never the converse.
// ---------------------------------------------------------------------------

enum class Sort { General, Integer };

struct FoTerm;
using FoTermPtr = std::shared_ptr<const FoTerm>;

enum class FoOp { Add, Sub, Mul };

struct FoTerm {
    enum class Kind { Constant, Variable, Abs, BinOp };

    Kind kind;
    PrecomputedTerm constant;   // Constant
    std::string var;            // Variable
    Sort var_sort = Sort::General;
    FoOp op = FoOp::Add;        // BinOp
    FoTermPtr lhs, rhs;         // BinOp; Abs uses lhs

    Sort sort() const;

    static FoTermPtr constant_term(PrecomputedTerm c);
    static FoTermPtr variable(std::string name, Sort sort);
    static FoTermPtr abs(FoTermPtr t);               // argument must be integer-sorted
    static FoTermPtr binop(FoOp op, FoTermPtr l, FoTermPtr r);
};

bool equal(const FoTermPtr& a, const FoTermPtr& b);
void collect_vars(const FoTermPtr& t, std::set<std::string>& out);

// ---------------------------------------------------------------------------
// Predicate references. Plain predicates come from programs; Atleast, Atmost
// and Start predicates are identified by an index into a FamilyRegistry.
// Primed twins live in sigma_2'.
// ---------------------------------------------------------------------------

enum class PredKind { Plain, Atleast, Atmost, Start };

struct PredRef {
    PredKind kind = PredKind::Plain;
    std::string name;   // Plain only
    int arity = 0;
    int family = -1;    // Atleast/Atmost/Start only
    bool primed = false;

    friend bool operator==(const PredRef& a, const PredRef& b) {
        return a.kind == b.kind && a.name == b.name && a.arity == b.arity &&
               a.family == b.family && a.primed == b.primed;
    }
    friend bool operator<(const PredRef& a, const PredRef& b) {
        if (a.kind != b.kind) return a.kind < b.kind;
        if (a.name != b.name) return a.name < b.name;
        if (a.arity != b.arity) return a.arity < b.arity;
        if (a.family != b.family) return a.family < b.family;
        return a.primed < b.primed;
    }
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

enum class CmpRel { Eq, Ne, Lt, Gt, Le, Ge };

struct Formula {
    enum class Kind {
        Atom, Cmp, True, False, Not, And, Or, Implies, Iff, Forall, Exists
    };

    Kind kind;
    PredRef pred;                  // Atom
    std::vector<FoTermPtr> args;   // Atom
    FoTermPtr tlhs, trhs;          // Cmp
    CmpRel rel = CmpRel::Eq;       // Cmp
    FormulaPtr a, b;               // connectives; Not uses a
    std::string var;               // quantifiers
    Sort var_sort = Sort::General;
};

FormulaPtr mk_atom(PredRef pred, std::vector<FoTermPtr> args);
FormulaPtr mk_cmp(FoTermPtr l, CmpRel rel, FoTermPtr r);
FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_implies(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_forall(std::string var, Sort sort, FormulaPtr f);
FormulaPtr mk_exists(std::string var, Sort sort, FormulaPtr f);

// Conjunction/disjunction of a list; empty list gives top/bottom.
FormulaPtr mk_and(const std::vector<FormulaPtr>& fs);
FormulaPtr mk_or(const std::vector<FormulaPtr>& fs);
FormulaPtr mk_forall(const std::vector<std::pair<std::string, Sort>>& vars, FormulaPtr f);
FormulaPtr mk_exists(const std::vector<std::pair<std::string, Sort>>& vars, FormulaPtr f);

bool equal(const FormulaPtr& a, const FormulaPtr& b);

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

// Free variables with their sorts, ordered by name.
std::vector<std::pair<std::string, Sort>> free_vars(const FormulaPtr& f);
std::set<std::string> free_var_names(const FormulaPtr& f);

// Capture-avoiding substitution F^X_t. Bound occurrences are untouched;
// bound variables are renamed when a variable of t would be captured.
// Throws when t's sort is incompatible with the variable's sort.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const FoTermPtr& t);
FoTermPtr substitute(const FoTermPtr& term, const std::string& var, const FoTermPtr& t);

// Universally quantifies the free variables in alphabetical order.
FormulaPtr universal_closure(const FormulaPtr& f);

// Lexicographic order (X1,..,Xm) < (U1,..,Um) as a disjunction of guarded
// strict comparisons; the empty tuple yields bottom.
FormulaPtr lex_less(const std::vector<FoTermPtr>& xs, const std::vector<FoTermPtr>& us);

// Replaces every intensional predicate p by its primed twin p'.
// Comparisons are untouched. Throws if the input already contains a
// primed symbol.
FormulaPtr prime(const FormulaPtr& f);

bool contains_primed(const FormulaPtr& f);
bool contains_iff(const FormulaPtr& f);

// Rewrites every F <-> G into (F -> G) & (G -> F).
FormulaPtr lower_iff(const FormulaPtr& f);

// Alpha-equivalence (bound variable names ignored).
bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b);

// Canonical serialization with bound variables de Bruijn-normalized and the
// given free variables renamed by role; used for family interning.
std::string canonical_key(const FormulaPtr& f,
                          const std::vector<std::string>& role_vars);

void collect_preds(const FormulaPtr& f, std::set<PredRef>& out);

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

struct FamilyRegistry;

struct PrintStyle {
    bool unicode = true;
    // Render family predicates with their full (X;V;F) descriptor instead of
    // the short digest name; needs a registry.
    bool inline_families = false;
    const FamilyRegistry* registry = nullptr;
};

std::string to_string(const FoTermPtr& t);
std::string to_string(const FormulaPtr& f, const PrintStyle& style = {});

}  // namespace mgc
