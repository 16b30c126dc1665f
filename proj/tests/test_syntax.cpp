#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mgc/parser.hpp"

using namespace mgc;

namespace {

const char* kProgramA =
    "p(a).\n"
    "q(Y) :- count{X : p(X), X != a} = Y.\n";

const char* kProgramB =
    "p(a).\n"
    "q(Y-1) :- count{X : p(X)} = Y.\n";

bool term_eq(const MgcTermPtr& a, const MgcTermPtr& b) { return equal(a, b); }

bool atom_eq(const MgcAtom& a, const MgcAtom& b) {
    if (a.pred != b.pred || a.args.size() != b.args.size()) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!term_eq(a.args[i], b.args[i])) return false;
    return true;
}

bool conjunct_eq(const Conjunct& a, const Conjunct& b) {
    if (a.kind != b.kind) return false;
    if (a.kind == Conjunct::Kind::Literal)
        return a.lit.negations == b.lit.negations && atom_eq(a.lit.atom, b.lit.atom);
    return a.cmp.op == b.cmp.op && term_eq(a.cmp.lhs, b.cmp.lhs) && term_eq(a.cmp.rhs, b.cmp.rhs);
}

bool element_eq(const BodyElement& a, const BodyElement& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case BodyElement::Kind::Literal:
            return a.lit.negations == b.lit.negations && atom_eq(a.lit.atom, b.lit.atom);
        case BodyElement::Kind::Comparison:
            return a.cmp.op == b.cmp.op && term_eq(a.cmp.lhs, b.cmp.lhs) &&
                   term_eq(a.cmp.rhs, b.cmp.rhs);
        case BodyElement::Kind::Aggregate: {
            if (a.agg.rel != b.agg.rel || !term_eq(a.agg.bound, b.agg.bound)) return false;
            if (a.agg.element.tuple != b.agg.element.tuple) return false;
            if (a.agg.element.condition.size() != b.agg.element.condition.size()) return false;
            for (std::size_t i = 0; i < a.agg.element.condition.size(); ++i)
                if (!conjunct_eq(a.agg.element.condition[i], b.agg.element.condition[i]))
                    return false;
            return true;
        }
    }
    return false;
}

bool rule_eq(const Rule& a, const Rule& b) {
    if (a.head_kind != b.head_kind) return false;
    if (a.head_kind != Rule::HeadKind::Constraint && !atom_eq(a.head, b.head)) return false;
    if (a.body.size() != b.body.size()) return false;
    for (std::size_t i = 0; i < a.body.size(); ++i)
        if (!element_eq(a.body[i], b.body[i])) return false;
    return true;
}

bool program_eq(const Program& a, const Program& b) {
    if (a.rules.size() != b.rules.size()) return false;
    for (std::size_t i = 0; i < a.rules.size(); ++i)
        if (!rule_eq(a.rules[i], b.rules[i])) return false;
    return true;
}

}  // namespace

TEST_CASE("program A parses into two rules") {
    Program p = parse_program(kProgramA);
    REQUIRE(p.rules.size() == 2);
    CHECK(p.rules[0].head_kind == Rule::HeadKind::Basic);
    CHECK(p.rules[0].head.pred == "p");
    CHECK(p.rules[0].body.empty());
    REQUIRE(p.rules[1].body.size() == 1);
    REQUIRE(p.rules[1].body[0].kind == BodyElement::Kind::Aggregate);
    const MgcAggregate& agg = p.rules[1].body[0].agg;
    CHECK(agg.rel == AggRel::Eq);
    CHECK(agg.element.tuple == std::vector<std::string>{"X"});
    CHECK(agg.element.condition.size() == 2);
}

TEST_CASE("empty input is the empty program") {
    CHECK(parse_program("").rules.empty());
    CHECK(parse_program("  % only a comment\n").rules.empty());
}

TEST_CASE("impure rule parses; impurity is caught downstream") {
    Program p = parse_program("q(Y) :- count{X : p(X)} = Y, X > 0.");
    REQUIRE(p.rules.size() == 1);
    auto imp = check_pure(p.rules[0]);
    REQUIRE(imp.has_value());
    CHECK(imp->variable == "X");
}

TEST_CASE("numerals map to integers, including negatives") {
    Program p = parse_program("p(-7). q(0). r(12345).");
    REQUIRE(p.rules.size() == 3);
    CHECK(p.rules[0].head.args[0]->constant.value == -7);
    CHECK(p.rules[1].head.args[0]->constant.value == 0);
    CHECK(p.rules[2].head.args[0]->constant.value == 12345);
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_program("p(a).\nq(X) :- ,\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(e.col >= 8);
    }
}

TEST_CASE("interval symbol is rejected inside aggregate bounds") {
    CHECK_THROWS_AS(parse_program("q :- count{X : p(X)} >= 1..3."), ParseError);
    // ... but is fine elsewhere.
    CHECK_NOTHROW(parse_program("q(1..3)."));
    CHECK_NOTHROW(parse_program("q :- count{X : p(X, 1..3)} >= 2."));
}

TEST_CASE("aggregate tuple variables must occur in the condition") {
    CHECK_THROWS_AS(parse_program("q :- count{X, Y : p(X)} >= 1."), ParseError);
}

TEST_CASE("classify_variables: program B rule 2") {
    Program p = parse_program(kProgramB);
    VariableClasses c = classify_variables(p.rules[1]);
    CHECK(c.global == std::set<std::string>{"Y"});
    CHECK(c.local == std::set<std::string>{"X"});
}

TEST_CASE("classify_variables: fact has no variables") {
    Program p = parse_program("p(a).");
    VariableClasses c = classify_variables(p.rules[0]);
    CHECK(c.global.empty());
    CHECK(c.local.empty());
}

TEST_CASE("classify_variables: body occurrence outside the element makes X global") {
    Rule r = parse_rule("q(Y) :- count{X : p(X)} = Y, X > 0.");
    VariableClasses c = classify_variables(r);
    CHECK(c.global.count("X") == 1);
    CHECK(c.local.count("X") == 0);
}

TEST_CASE("classification is a partition of the rule's variables") {
    const char* rules[] = {
        "p(a).",
        "q(Y) :- count{X : p(X), X != a} = Y.",
        "q(Y-1) :- count{X : p(X)} = Y.",
        "{r(X)} :- p(X), count{Z : q(Z, X)} >= 2.",
        ":- count{X, Y : e(X, Y)} >= N, n(N).",
        "q(Y) :- count{X : p(X)} = Y, X > 0.",
    };
    for (const char* text : rules) {
        Rule r = parse_rule(text);
        VariableClasses c = classify_variables(r);
        std::set<std::string> all = rule_vars(r);
        std::set<std::string> join = c.global;
        join.insert(c.local.begin(), c.local.end());
        CHECK(join == all);
        for (const std::string& v : c.global) CHECK(c.local.count(v) == 0);
    }
}

TEST_CASE("check_pure accepts program A and constraints without aggregates") {
    Program a = parse_program(kProgramA);
    CHECK(!check_pure(a.rules[1]).has_value());
    CHECK(!check_pure(parse_rule(":- p(X).")).has_value());
}

TEST_CASE("desugar splits count-equality into >= and <=") {
    Rule r = parse_rule("q(Y) :- count{X : p(X)} = Y.");
    Rule d = desugar_count_eq(r);
    REQUIRE(d.body.size() == 2);
    CHECK(d.body[0].agg.rel == AggRel::Geq);
    CHECK(d.body[1].agg.rel == AggRel::Leq);
    // Both copies carry the same element.
    CHECK(element_eq(d.body[0], BodyElement::aggregate([&] {
        MgcAggregate g = d.body[1].agg;
        g.rel = AggRel::Geq;
        return g;
    }())));
}

TEST_CASE("desugar leaves other rules alone") {
    Rule plain = parse_rule("q(Y) :- p(Y), Y < 3.");
    CHECK(rule_eq(plain, desugar_count_eq(plain)));
    Rule geq = parse_rule("q(Y) :- count{X : p(X)} >= Y.");
    CHECK(rule_eq(geq, desugar_count_eq(geq)));
}

TEST_CASE("after desugaring no equality aggregate remains") {
    Program p = parse_program(
        "q(Y) :- count{X : p(X)} = Y.\n"
        "r :- count{X : p(X)} = 2, count{Z : q(Z)} >= 1.\n");
    Program d = desugar_count_eq(p);
    for (const Rule& r : d.rules)
        for (const BodyElement& e : r.body)
            if (e.kind == BodyElement::Kind::Aggregate) CHECK(e.agg.rel != AggRel::Eq);
}

TEST_CASE("parse then print then parse is the identity") {
    const char* corpus[] = {
        kProgramA,
        kProgramB,
        "{q(X)} :- p(X).\n",
        ":- p(X), not q(X).\n",
        "r :- not not s.\n",
        "p(1..3). q(|X| + 2) :- p(X).\n",
        "t(X/Y, X\\Y) :- p(X), q(Y).\n",
        "u :- count{X, Y : e(X, Y), X < Y} <= 4.\n",
        "v(X*2-1) :- p(X), X >= -3.\n",
        "w :- 1 < a.\n",
        ":- .\n",
        "n(c). m(X) :- n(X), X != d.\n",
    };
    for (const char* text : corpus) {
        Program once = parse_program(text);
        Program twice = parse_program(to_string(once));
        CHECK_MESSAGE(program_eq(once, twice), "round-trip failed for: ", text);
        // And printing is a fixpoint from then on.
        CHECK(to_string(once) == to_string(twice));
    }
}

TEST_CASE("collected predicates and constants") {
    Program p = parse_program(kProgramA);
    auto preds = collect_predicates(p);
    REQUIRE(preds.size() == 2);
    CHECK(preds[0] == std::pair<std::string, int>{"p", 1});
    CHECK(preds[1] == std::pair<std::string, int>{"q", 1});
    CHECK(collect_constants(p) == std::set<std::string>{"a"});
}
