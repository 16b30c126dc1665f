#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mgc/precomputed.hpp"

namespace mgc {

// ---------------------------------------------------------------------------
// MGC terms
// ---------------------------------------------------------------------------

struct MgcTerm;
using MgcTermPtr = std::shared_ptr<const MgcTerm>;

enum class MgcOp { Add, Sub, Mul, Div, Mod, Interval };

struct MgcTerm {
    enum class Kind { Precomputed, Variable, Abs, BinOp };

    Kind kind;
    PrecomputedTerm constant;  // Precomputed
    std::string var;           // Variable
    MgcOp op = MgcOp::Add;     // BinOp
    MgcTermPtr lhs, rhs;       // BinOp; Abs uses lhs only

    static MgcTermPtr precomputed(PrecomputedTerm c);
    static MgcTermPtr variable(std::string name);
    static MgcTermPtr abs(MgcTermPtr t);
    static MgcTermPtr binop(MgcOp op, MgcTermPtr l, MgcTermPtr r);

    bool contains_interval() const;
    void collect_vars(std::set<std::string>& out) const;
};

bool equal(const MgcTermPtr& a, const MgcTermPtr& b);
std::string to_string(const MgcTermPtr& t);

// ---------------------------------------------------------------------------
// Atoms, literals, comparisons, aggregates, rules
// ---------------------------------------------------------------------------

struct MgcAtom {
    std::string pred;
    std::vector<MgcTermPtr> args;
};

enum class CmpOp { Eq, Ne, Lt, Gt, Le, Ge };

std::string cmp_str(CmpOp op);

struct MgcLiteral {
    MgcAtom atom;
    int negations = 0;  // 0, 1, or 2
};

struct MgcComparison {
    MgcTermPtr lhs;
    CmpOp op;
    MgcTermPtr rhs;
};

// A conjunct of an aggregate element's condition.
struct Conjunct {
    enum class Kind { Literal, Comparison };
    Kind kind;
    MgcLiteral lit;
    MgcComparison cmp;

    static Conjunct literal(MgcLiteral l) { return Conjunct{Kind::Literal, std::move(l), {}}; }
    static Conjunct comparison(MgcComparison c) { return Conjunct{Kind::Comparison, {}, std::move(c)}; }
};

struct AggregateElement {
    std::vector<std::string> tuple;  // X: distinct variables
    std::vector<Conjunct> condition; // L: conjunction of literals and comparisons
};

enum class AggRel { Geq, Leq, Eq };  // Eq is removed by desugar_count_eq

struct MgcAggregate {
    AggRel rel;
    AggregateElement element;
    MgcTermPtr bound;  // must not contain the interval symbol
};

struct BodyElement {
    enum class Kind { Literal, Comparison, Aggregate };
    Kind kind;
    MgcLiteral lit;
    MgcComparison cmp;
    MgcAggregate agg;

    static BodyElement literal(MgcLiteral l) { return BodyElement{Kind::Literal, std::move(l), {}, {}}; }
    static BodyElement comparison(MgcComparison c) { return BodyElement{Kind::Comparison, {}, std::move(c), {}}; }
    static BodyElement aggregate(MgcAggregate a) { return BodyElement{Kind::Aggregate, {}, {}, std::move(a)}; }
};

struct Rule {
    enum class HeadKind { Basic, Choice, Constraint };
    HeadKind head_kind = HeadKind::Constraint;
    MgcAtom head;  // unused for constraints
    std::vector<BodyElement> body;
};

struct Program {
    std::vector<Rule> rules;
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

struct VariableClasses {
    std::set<std::string> global;
    std::set<std::string> local;
};

// Partition of the rule's variables: a variable is local when every
// occurrence lies inside an aggregate element, global otherwise.
VariableClasses classify_variables(const Rule& rule);

struct Impurity {
    std::string variable;       // offending global variable in some X tuple
    std::size_t element_index;  // index of the aggregate body element
};

// A rule is pure when every aggregate element's tuple contains only
// local variables.
std::optional<Impurity> check_pure(const Rule& rule);

// Replaces every count{E} = t by the conjuncts count{E} >= t and
// count{E} <= t; everything else is untouched.
Rule desugar_count_eq(const Rule& rule);
Program desugar_count_eq(const Program& prog);

std::set<std::string> rule_vars(const Rule& rule);

// Predicate name/arity pairs occurring anywhere in the program.
std::vector<std::pair<std::string, int>> collect_predicates(const Program& prog);
// Symbolic constants occurring anywhere in the program.
std::set<std::string> collect_constants(const Program& prog);

std::string to_string(const MgcAtom& a);
std::string to_string(const BodyElement& e);
std::string to_string(const Rule& r);
std::string to_string(const Program& p);

}  // namespace mgc
