#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mgc/ast.hpp"
#include "mgc/family.hpp"
#include "mgc/fol.hpp"

namespace mgc {

// ---------------------------------------------------------------------------
// Finite universes
// ---------------------------------------------------------------------------

// A finite slice of the precomputed-term domain. The numerals present must
// be contiguous; they form the integer window.
struct Universe {
    std::vector<PrecomputedTerm> terms;  // sorted by the global term order
    std::int64_t window_lo = 0;          // empty window when lo > hi
    std::int64_t window_hi = -1;

    static Universe from_terms(std::vector<PrecomputedTerm> terms);
    // All constants of both programs plus a numeral range covering the
    // programs' numerals and [-2, max(3, #constants + 2)].
    static Universe default_for(const Program& p1, const Program& p2);

    bool contains(const PrecomputedTerm& t) const;
    std::string str() const;
};

// Parses "a,b,-2..4" style universe descriptions.
Universe parse_universe(const std::string& text);

// ---------------------------------------------------------------------------
// Ground atoms and HT pairs
// ---------------------------------------------------------------------------

// All atoms of the given plain predicates over the universe, in
// (predicate, argument-tuple) lexicographic order. Oracle enumeration is
// mask-based, so at most 64 atoms are supported.
struct AtomTable {
    struct Pred {
        std::string name;
        int arity;
    };
    std::vector<Pred> preds;
    std::vector<std::string> names;  // id -> rendered atom

    int lookup(const std::string& pred, const std::vector<PrecomputedTerm>& args) const;
    int size() const { return static_cast<int>(names.size()); }

    static AtomTable build(const std::vector<PredRef>& plain_preds, const Universe& u);

  private:
    std::map<std::string, int> index_;
};

// Here-and-there interpretation over an atom table: bit i set = atom i holds.
struct HTPair {
    std::uint64_t here = 0;
    std::uint64_t there = 0;
    bool valid() const { return (here & ~there) == 0; }
};

// ---------------------------------------------------------------------------
// Grounding: sentences over sigma_1/sigma_2 to a finitary propositional DAG
// ---------------------------------------------------------------------------

// Quantifiers expand over the universe terms (general sort) or the integer
// window (integer sort), both widened by `margin` extra numerals on each
// side. Atoms stay within the universe: a plain atom whose arguments leave
// the atom table folds to false (recorded as a truncation warning). The
// margin keeps count thresholds and shifted rule heads at the window edge
// from losing constraints; margin 0 is the literal truncated grounding.
//
// Atleast/Atmost/Start atoms are not enumerated as independent atoms; they
// become counting nodes evaluated definitionally against the standard
// interpretation of their family.
struct GroundOptions {
    int margin = 0;
};

struct Dag {
    enum class Op : std::uint8_t {
        False, True, Atom, Not, And, Or, Impl, CountGe, CountLe, List
    };
    struct Node {
        Op op;
        int a = -1;                // Not/Impl lhs; Count list id
        int b = -1;                // Impl rhs
        int atom = -1;             // Atom
        std::int64_t bound = 0;    // Count threshold (post base adjustment)
        std::vector<int> kids;     // And/Or/List
    };
    std::vector<Node> nodes;
    std::vector<std::string> warnings;

    int add(Node n);
    int false_node();
    int true_node();

  private:
    std::map<std::string, int> cons_;
};

struct GroundFormula {
    std::shared_ptr<Dag> dag;
    int root = -1;
};

GroundFormula ground(const FormulaPtr& f, const Universe& u, const AtomTable& atoms,
                     const FamilyRegistry* registry, const GroundOptions& opts = {});

// Grounds two sentences into one shared DAG (maximizes node sharing).
std::pair<GroundFormula, GroundFormula> ground_pair(const FormulaPtr& f1, const FormulaPtr& f2,
                                                    const Universe& u, const AtomTable& atoms,
                                                    const FamilyRegistry* registry,
                                                    const GroundOptions& opts = {});

// Margin heuristic: |U|^maxX + |U| + 8, where maxX is the widest aggregate
// tuple among the formula's families.
int auto_margin(const FormulaPtr& f, const Universe& u, const FamilyRegistry* registry);

// Evaluator over a ground DAG with a per-pair memo; reusable across many
// pairs without reallocation.
class PairEvaluator {
  public:
    explicit PairEvaluator(const Dag& dag);
    // (classical-at-there, here) truth values of a node under a pair.
    std::pair<bool, bool> eval(int root, const HTPair& pair);

  private:
    std::uint8_t compute(int id);

    const Dag& dag_;
    std::vector<std::uint32_t> stamp_;
    std::vector<std::uint8_t> value_;
    std::uint32_t now_ = 0;
    HTPair pair_;
};

std::pair<bool, bool> eval_pair(const Dag& dag, int root, const HTPair& pair);

// Kripke two-world satisfaction of a ground formula.
bool ht_sat(const HTPair& pair, const Dag& dag, int root);
bool ht_sat(const HTPair& pair, const GroundFormula& g);

// ---------------------------------------------------------------------------
// sigma_0 ground evaluation
// ---------------------------------------------------------------------------

// Value of a ground term (arithmetic over numerals, truncation toward zero
// handled by the val translation upstream).
PrecomputedTerm eval_ground_term(const FoTermPtr& t);
// Comparisons are total on precomputed terms via the global order.
bool eval_ground_cmp(const PrecomputedTerm& a, CmpRel rel, const PrecomputedTerm& b);

// ---------------------------------------------------------------------------
// Aggregate atoms, standard prime interpretations, gamma correspondence
// ---------------------------------------------------------------------------

// HT value of a ground Atleast/Atmost atom: unfolds to the Exists>=/Exists<=
// expansion, grounds it, and evaluates with ht_sat.
bool eval_agg_atom(const HTPair& pair, PredKind kind, const FamilyRegistry& reg, int family,
                   const std::vector<PrecomputedTerm>& v_args, const PrecomputedTerm& bound,
                   const Universe& u, const AtomTable& atoms, const GroundOptions& opts = {});

// Classical valuation over sigma_2' ground atoms induced by an HT pair:
// unprimed atoms report the here-world, primed atoms the there-world.
struct PrimeInterp {
    const Universe* universe = nullptr;
    const AtomTable* atoms = nullptr;
    const FamilyRegistry* registry = nullptr;
    HTPair pair;
    GroundOptions opts;

    bool plain_atom(const std::string& pred, const std::vector<PrecomputedTerm>& args,
                    bool primed) const;
    bool family_atom(PredKind kind, int family, const std::vector<PrecomputedTerm>& args,
                     bool primed) const;
};

PrimeInterp build_prime_interp(const HTPair& pair, const Universe& u, const AtomTable& atoms,
                               const FamilyRegistry* registry, const GroundOptions& opts = {});

// Classical satisfaction of a closed sigma_2' sentence under a prime
// interpretation (quantifiers range over the margin-widened domains).
bool classical_sat(const FormulaPtr& f, const PrimeInterp& interp);

// HT satisfaction of a closed sigma_1/sigma_2 sentence: returns
// (classical-at-there, here).
std::pair<bool, bool> ht_sat_formula(const FormulaPtr& f, const HTPair& pair, const Universe& u,
                                     const AtomTable& atoms, const FamilyRegistry* registry,
                                     const GroundOptions& opts = {});

struct GammaLemmaReport {
    bool classical_gamma;  // I^H |= gamma F
    bool ht;               // <H,I> |=ht F
    bool agree;
};

GammaLemmaReport check_gamma_lemma(const FormulaPtr& f, const HTPair& pair, const Universe& u,
                                   const AtomTable& atoms, const FamilyRegistry* registry,
                                   const GroundOptions& opts = {});

// ---------------------------------------------------------------------------
// Stable models and strong equivalence
// ---------------------------------------------------------------------------

struct OracleOptions {
    std::optional<int> margin;  // default: auto_margin over both programs
    bool serial = false;        // force the serial reference implementation
};

struct StableModelsResult {
    std::vector<std::vector<std::string>> models;  // atom names, enumeration order
    std::vector<std::string> warnings;
    AtomTable atoms;
};

StableModelsResult stable_models(const Program& prog, const Universe& u,
                                 const OracleOptions& opts = {});

struct Counterexample {
    std::vector<std::string> here;
    std::vector<std::string> there;
    std::uint64_t here_mask = 0;
    std::uint64_t there_mask = 0;
};

struct EquivalenceReport {
    bool equivalent = false;  // relative to the universe, never a proof
    std::optional<Counterexample> counterexample;
    std::vector<std::string> warnings;
    std::uint64_t pairs_checked = 0;
    double elapsed_ms = 0.0;
    std::string universe;
    int atom_count = 0;
    int margin = 0;
};

// Enumerates every HT pair over the programs' atoms (there-worlds by
// cardinality then mask order, here-worlds by mask order) and reports the
// first pair where the groundings disagree. The default implementation
// specializes the DAG per there-world and runs the scan with OpenMP; the
// serial reference evaluates every pair directly. Both return identical
// verdicts, counterexamples, and pair counts.
EquivalenceReport check_strong_equivalence(const Program& p1, const Program& p2,
                                           const Universe& u, const OracleOptions& opts = {});

// The serial reference: direct (there, here) evaluation of every pair in
// the same enumeration order. Kept for testing and benchmarking against
// the specialized kernel.
EquivalenceReport check_strong_equivalence_serial(const Program& p1, const Program& p2,
                                                  const Universe& u,
                                                  const OracleOptions& opts = {});

}  // namespace mgc
