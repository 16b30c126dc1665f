#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "mgc/family.hpp"
#include "mgc/fol.hpp"
#include "mgc/oracle.hpp"
#include "support.hpp"

using namespace mgc;

namespace {

FoTermPtr gv(const std::string& n) { return FoTerm::variable(n, Sort::General); }
FoTermPtr iv(const std::string& n) { return FoTerm::variable(n, Sort::Integer); }
FoTermPtr num(std::int64_t v) { return FoTerm::constant_term(PrecomputedTerm::numeral(v)); }
FoTermPtr sym(const std::string& n) { return FoTerm::constant_term(PrecomputedTerm::symbolic(n)); }
FormulaPtr atom(const std::string& p, std::vector<FoTermPtr> args) {
    int arity = static_cast<int>(args.size());
    return mk_atom(PredRef{PredKind::Plain, p, arity, -1, false}, std::move(args));
}

// ---------------------------------------------------------------------------
// Reference substitution over a nameless (de Bruijn) representation. Bound
// variables become indices, so substituting a named free variable can never
// capture; comparing against it checks the capture-avoiding substitution.
// ---------------------------------------------------------------------------

struct DbTerm {
    enum class Kind { Const, Free, Bound, Abs, Op } kind;
    PrecomputedTerm constant;
    std::string free;
    int index = -1;
    FoOp op = FoOp::Add;
    std::vector<DbTerm> kids;

    friend bool operator==(const DbTerm& a, const DbTerm& b) {
        return a.kind == b.kind && a.constant == b.constant && a.free == b.free &&
               a.index == b.index && a.op == b.op && a.kids == b.kids;
    }
};

struct DbFormula {
    Formula::Kind kind = Formula::Kind::True;
    PredRef pred;
    std::vector<DbTerm> args;
    CmpRel rel = CmpRel::Eq;
    Sort var_sort = Sort::General;
    std::vector<DbFormula> kids;

    friend bool operator==(const DbFormula& a, const DbFormula& b) {
        return a.kind == b.kind && a.pred == b.pred && a.args == b.args && a.rel == b.rel &&
               a.var_sort == b.var_sort && a.kids == b.kids;
    }
};

DbTerm db_term(const FoTermPtr& t, const std::vector<std::string>& binders) {
    DbTerm out;
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            out.kind = DbTerm::Kind::Const;
            out.constant = t->constant;
            return out;
        case FoTerm::Kind::Variable: {
            for (int i = static_cast<int>(binders.size()) - 1; i >= 0; --i) {
                if (binders[static_cast<std::size_t>(i)] == t->var) {
                    out.kind = DbTerm::Kind::Bound;
                    out.index = static_cast<int>(binders.size()) - 1 - i;
                    return out;
                }
            }
            out.kind = DbTerm::Kind::Free;
            out.free = t->var;
            return out;
        }
        case FoTerm::Kind::Abs:
            out.kind = DbTerm::Kind::Abs;
            out.kids.push_back(db_term(t->lhs, binders));
            return out;
        case FoTerm::Kind::BinOp:
            out.kind = DbTerm::Kind::Op;
            out.op = t->op;
            out.kids.push_back(db_term(t->lhs, binders));
            out.kids.push_back(db_term(t->rhs, binders));
            return out;
    }
    return out;
}

DbFormula db_formula(const FormulaPtr& f, std::vector<std::string>& binders) {
    DbFormula out;
    out.kind = f->kind;
    switch (f->kind) {
        case Formula::Kind::Atom:
            out.pred = f->pred;
            for (const auto& a : f->args) out.args.push_back(db_term(a, binders));
            return out;
        case Formula::Kind::Cmp:
            out.rel = f->rel;
            out.args.push_back(db_term(f->tlhs, binders));
            out.args.push_back(db_term(f->trhs, binders));
            return out;
        case Formula::Kind::True:
        case Formula::Kind::False:
            return out;
        case Formula::Kind::Not:
            out.kids.push_back(db_formula(f->a, binders));
            return out;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            out.kids.push_back(db_formula(f->a, binders));
            out.kids.push_back(db_formula(f->b, binders));
            return out;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            out.var_sort = f->var_sort;
            binders.push_back(f->var);
            out.kids.push_back(db_formula(f->a, binders));
            binders.pop_back();
            return out;
    }
    return out;
}

DbFormula to_db(const FormulaPtr& f) {
    std::vector<std::string> binders;
    return db_formula(f, binders);
}

// Substitution in the nameless world: replace the free name; indices are
// untouched, so capture cannot occur by construction.
DbTerm db_subst(const DbTerm& t, const std::string& var, const DbTerm& repl) {
    if (t.kind == DbTerm::Kind::Free && t.free == var) return repl;
    DbTerm out = t;
    for (DbTerm& k : out.kids) k = db_subst(k, var, repl);
    return out;
}

DbFormula db_subst(const DbFormula& f, const std::string& var, const DbTerm& repl) {
    DbFormula out = f;
    for (DbTerm& a : out.args) a = db_subst(a, var, repl);
    for (DbFormula& k : out.kids) k = db_subst(k, var, repl);
    return out;
}

}  // namespace

TEST_CASE("substitution leaves bound occurrences alone") {
    // (p(X) & forall X q(X))^X_a  =  p(a) & forall X q(X)
    FormulaPtr f = mk_and(atom("p", {gv("X")}), mk_forall("X", Sort::General, atom("q", {gv("X")})));
    FormulaPtr got = substitute(f, "X", sym("a"));
    FormulaPtr want = mk_and(atom("p", {sym("a")}), mk_forall("X", Sort::General, atom("q", {gv("X")})));
    CHECK(equal(got, want));
}

TEST_CASE("substitution instantiates the induction base") {
    // (N >= 0 -> g(N))^N_0
    FormulaPtr f = mk_implies(mk_cmp(iv("N"), CmpRel::Ge, num(0)), atom("g", {iv("N")}));
    FormulaPtr got = substitute(f, "N", num(0));
    FormulaPtr want = mk_implies(mk_cmp(num(0), CmpRel::Ge, num(0)), atom("g", {num(0)}));
    CHECK(equal(got, want));
}

TEST_CASE("substitution renames a capturing binder") {
    // (exists Y p(X,Y))^X_Y  must not capture Y.
    FormulaPtr f = mk_exists("Y", Sort::General, atom("p", {gv("X"), gv("Y")}));
    FormulaPtr got = substitute(f, "X", gv("Y"));
    FormulaPtr want = mk_exists("Y1", Sort::General, atom("p", {gv("Y"), gv("Y1")}));
    CHECK(alpha_equal(got, want));
    CHECK(to_db(got) == db_subst(to_db(f), "X", DbTerm{DbTerm::Kind::Free, {}, "Y", -1, FoOp::Add, {}}));
}

TEST_CASE("substitution agrees with the nameless reference on random formulas") {
    testsup::Corpus corpus(7);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        std::vector<std::pair<std::string, Sort>> env = {{"X", Sort::General},
                                                         {"Y", Sort::General}};
        FormulaPtr f = corpus.formula(3, env, false);
        FoTermPtr t = corpus.general_term(env);
        FormulaPtr ours = substitute(f, "X", t);
        DbFormula expect = db_subst(to_db(f), "X", db_term(t, {}));
        CHECK(to_db(ours) == expect);
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("substituting a variable by itself changes nothing") {
    testsup::Corpus corpus(11);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::pair<std::string, Sort>> env = {{"X", Sort::General}};
        FormulaPtr f = corpus.formula(3, env, false);
        CHECK(equal(substitute(f, "X", gv("X")), f));
    }
}

TEST_CASE("free variables of a substitution instance") {
    testsup::Corpus corpus(13);
    for (int i = 0; i < 100; ++i) {
        std::vector<std::pair<std::string, Sort>> env = {{"X", Sort::General},
                                                         {"Y", Sort::General}};
        FormulaPtr f = corpus.formula(3, env, false);
        if (!free_var_names(f).count("X")) continue;
        FoTermPtr t = corpus.general_term({{"Y", Sort::General}});
        std::set<std::string> expect = free_var_names(f);
        expect.erase("X");
        std::set<std::string> tv;
        collect_vars(t, tv);
        expect.insert(tv.begin(), tv.end());
        CHECK(free_var_names(substitute(f, "X", t)) == expect);
    }
}

TEST_CASE("free_vars basics") {
    FormulaPtr f = mk_and(atom("p", {gv("X")}), mk_forall("X", Sort::General, atom("q", {gv("X")})));
    CHECK(free_var_names(f) == std::set<std::string>{"X"});
    CHECK(free_var_names(mk_forall("X", Sort::General, atom("p", {gv("X")}))).empty());
    // Family atom arguments are ordinary terms.
    testsup::Corpus corpus;
    FormulaPtr g = mk_family_atom(PredKind::Atleast, *corpus.registry, corpus.fam_v,
                                  {gv("V"), gv("Z")});
    CHECK(free_var_names(g) == std::set<std::string>{"V", "Z"});
}

TEST_CASE("universal closure quantifies alphabetically") {
    FormulaPtr f = atom("p", {gv("X")});
    FormulaPtr closed = universal_closure(f);
    REQUIRE(closed->kind == Formula::Kind::Forall);
    CHECK(closed->var == "X");
    CHECK(equal(universal_closure(closed), closed));

    FormulaPtr g = atom("p", {gv("Z"), gv("Y")});
    FormulaPtr gc = universal_closure(g);
    CHECK(gc->var == "Y");
    CHECK(gc->a->var == "Z");
}

TEST_CASE("lexicographic order formula") {
    FormulaPtr one = lex_less({gv("X1")}, {gv("U1")});
    CHECK(equal(one, mk_cmp(gv("X1"), CmpRel::Lt, gv("U1"))));

    FormulaPtr two = lex_less({gv("X1"), gv("X2")}, {gv("U1"), gv("U2")});
    FormulaPtr want = mk_or(mk_cmp(gv("X1"), CmpRel::Lt, gv("U1")),
                            mk_and(mk_cmp(gv("X2"), CmpRel::Lt, gv("U2")),
                                   mk_cmp(gv("X1"), CmpRel::Eq, gv("U1"))));
    CHECK(equal(two, want));

    CHECK(equal(lex_less({}, {}), mk_false()));
    CHECK_THROWS_AS(lex_less({gv("X")}, {}), std::invalid_argument);
}

TEST_CASE("lex_less is irreflexive and transitive over a 3-element universe") {
    Universe u = Universe::from_terms({PrecomputedTerm::numeral(0), PrecomputedTerm::numeral(1),
                                       PrecomputedTerm::symbolic("a")});
    AtomTable empty_atoms = AtomTable::build({}, u);
    auto holds = [&](const std::vector<PrecomputedTerm>& xs,
                     const std::vector<PrecomputedTerm>& us) {
        std::vector<FoTermPtr> xt, ut;
        for (const auto& x : xs) xt.push_back(FoTerm::constant_term(x));
        for (const auto& v : us) ut.push_back(FoTerm::constant_term(v));
        FormulaPtr f = lex_less(xt, ut);
        return ht_sat_formula(f, HTPair{}, u, empty_atoms, nullptr).second;
    };
    for (int m = 1; m <= 2; ++m) {
        std::vector<std::vector<PrecomputedTerm>> tuples;
        if (m == 1) {
            for (const auto& t : u.terms) tuples.push_back({t});
        } else {
            for (const auto& s : u.terms)
                for (const auto& t : u.terms) tuples.push_back({s, t});
        }
        for (const auto& a : tuples) CHECK(!holds(a, a));
        for (const auto& a : tuples)
            for (const auto& b : tuples)
                for (const auto& c : tuples)
                    if (holds(a, b) && holds(b, c)) CHECK(holds(a, c));
    }
}

TEST_CASE("family names are deterministic and alpha-invariant") {
    FamilyRegistry reg;
    FoTermPtr x = gv("X");
    FormulaPtr body = mk_exists("Z", Sort::General,
                                mk_and(mk_cmp(gv("Z"), CmpRel::Eq, x), atom("p", {gv("Z")})));
    int f1 = reg.intern({"X"}, {}, body);

    // Same family spelled with W instead of X.
    FoTermPtr w = gv("W");
    FormulaPtr body_w = mk_exists("Z", Sort::General,
                                  mk_and(mk_cmp(gv("Z"), CmpRel::Eq, w), atom("p", {gv("Z")})));
    int f2 = reg.intern({"W"}, {}, body_w);
    CHECK(f1 == f2);

    // And with the bound variable renamed.
    FormulaPtr body_b = mk_exists("B", Sort::General,
                                  mk_and(mk_cmp(gv("B"), CmpRel::Eq, x), atom("p", {gv("B")})));
    CHECK(reg.intern({"X"}, {}, body_b) == f1);

    std::string name = family_name(PredKind::Atleast, reg, f1);
    CHECK(name.substr(0, 8) == "atleast_");
    CHECK(family_name(PredKind::Atleast, reg, f1) == name);

    // A different body gets a different id and name.
    int f3 = reg.intern({"X"}, {}, atom("p", {x}));
    CHECK(f3 != f1);
    CHECK(family_name(PredKind::Atleast, reg, f3) != name);
}

TEST_CASE("distinct bodies in a generated corpus get distinct names") {
    FamilyRegistry reg;
    std::set<std::string> names;
    int count = 0;
    for (int k = 0; k < 12; ++k) {
        FormulaPtr body =
            mk_and(atom("p", {gv("X")}),
                   mk_cmp(gv("X"), CmpRel::Ne, num(k)));
        int id = reg.intern({"X"}, {}, body);
        names.insert(family_name(PredKind::Atmost, reg, id));
        ++count;
    }
    CHECK(static_cast<int>(names.size()) == count);
}

TEST_CASE("priming replaces intensional symbols only") {
    FormulaPtr f = mk_implies(atom("p", {sym("a")}), atom("q", {sym("b")}));
    FormulaPtr fp = prime(f);
    REQUIRE(fp->kind == Formula::Kind::Implies);
    CHECK(fp->a->pred.primed);
    CHECK(fp->b->pred.primed);

    // Comparisons are untouched.
    FormulaPtr cmp = mk_cmp(gv("X"), CmpRel::Lt, gv("Y"));
    CHECK(equal(prime(cmp), cmp));

    // Family atoms under negation.
    testsup::Corpus corpus;
    FormulaPtr agg = mk_not(mk_family_atom(PredKind::Atleast, *corpus.registry,
                                           corpus.fam_simple, {num(1)}));
    FormulaPtr aggp = prime(agg);
    CHECK(aggp->a->pred.primed);
    CHECK(aggp->a->pred.kind == PredKind::Atleast);
}

TEST_CASE("priming a primed formula is rejected") {
    FormulaPtr f = atom("p", {sym("a")});
    FormulaPtr fp = prime(f);
    CHECK(!contains_primed(f));
    CHECK(contains_primed(fp));
    CHECK_THROWS_AS(prime(fp), std::invalid_argument);
}

TEST_CASE("lower_iff removes every equivalence") {
    testsup::Corpus corpus(23);
    for (int i = 0; i < 50; ++i) {
        FormulaPtr f = corpus.closed_sentence(4, false);
        CHECK(!contains_iff(lower_iff(f)));
    }
    FormulaPtr f = mk_iff(atom("p", {sym("a")}), mk_true());
    FormulaPtr low = lower_iff(f);
    CHECK(equal(low, mk_and(mk_implies(atom("p", {sym("a")}), mk_true()),
                            mk_implies(mk_true(), atom("p", {sym("a")})))));
}

TEST_CASE("sort discipline: arithmetic rejects general arguments") {
    CHECK_THROWS_AS(FoTerm::binop(FoOp::Add, gv("X"), num(1)), std::invalid_argument);
    CHECK_THROWS_AS(FoTerm::abs(sym("a")), std::invalid_argument);
    CHECK_NOTHROW(FoTerm::binop(FoOp::Add, iv("N"), num(1)));
    // Integer variables cannot receive general terms.
    FormulaPtr f = atom("g", {iv("N")});
    CHECK_THROWS_AS(substitute(f, "N", sym("a")), std::invalid_argument);
    CHECK_NOTHROW(substitute(f, "N", num(3)));
}
