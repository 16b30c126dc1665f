#include "mgc/translate.hpp"

#include <algorithm>

namespace mgc {

FoTermPtr FreshVars::fresh_general() {
    int n = gen_++;
    std::string name = n == 0 ? "Z" : "Z" + std::to_string(n);
    return FoTerm::variable(name, Sort::General);
}

FoTermPtr FreshVars::fresh_integer() {
    static const char* bases[3] = {"I", "J", "K"};
    int n = integer_++;
    std::string name = bases[n % 3];
    if (n >= 3) name += std::to_string(n / 3);
    return FoTerm::variable(name, Sort::Integer);
}

// ---------------------------------------------------------------------------
// val
// ---------------------------------------------------------------------------

FormulaPtr val(const MgcTermPtr& t, const FoTermPtr& z, FreshVars& fresh) {
    switch (t->kind) {
        case MgcTerm::Kind::Precomputed:
            return mk_cmp(z, CmpRel::Eq, FoTerm::constant_term(t->constant));
        case MgcTerm::Kind::Variable:
            return mk_cmp(z, CmpRel::Eq, FoTerm::variable(t->var, Sort::General));
        case MgcTerm::Kind::Abs: {
            FoTermPtr i = fresh.fresh_integer();
            FormulaPtr inner = val(t->lhs, i, fresh);
            return mk_exists(i->var, Sort::Integer,
                             mk_and(inner, mk_cmp(z, CmpRel::Eq, FoTerm::abs(i))));
        }
        case MgcTerm::Kind::BinOp:
            break;
    }

    FoTermPtr i = fresh.fresh_integer();
    FoTermPtr j = fresh.fresh_integer();
    switch (t->op) {
        case MgcOp::Add:
        case MgcOp::Sub:
        case MgcOp::Mul: {
            FoOp op = t->op == MgcOp::Add ? FoOp::Add : t->op == MgcOp::Sub ? FoOp::Sub : FoOp::Mul;
            FormulaPtr v1 = val(t->lhs, i, fresh);
            FormulaPtr v2 = val(t->rhs, j, fresh);
            FormulaPtr eq = mk_cmp(z, CmpRel::Eq, FoTerm::binop(op, i, j));
            return mk_exists(i->var, Sort::Integer,
                             mk_exists(j->var, Sort::Integer, mk_and({v1, v2, eq})));
        }
        case MgcOp::Div:
        case MgcOp::Mod: {
            FoTermPtr k = fresh.fresh_integer();
            FormulaPtr v1 = val(t->lhs, i, fresh);
            FormulaPtr v2 = val(t->rhs, j, fresh);
            FoTermPtr zero = FoTerm::constant_term(PrecomputedTerm::numeral(0));
            FoTermPtr one = FoTerm::constant_term(PrecomputedTerm::numeral(1));
            // K * |J| <= |I| < (K+1) * |J|, with the sign split choosing the
            // result so that the quotient truncates toward zero.
            FormulaPtr range = mk_and(
                mk_cmp(FoTerm::binop(FoOp::Mul, k, FoTerm::abs(j)), CmpRel::Le, FoTerm::abs(i)),
                mk_cmp(FoTerm::abs(i), CmpRel::Lt,
                       FoTerm::binop(FoOp::Mul, FoTerm::binop(FoOp::Add, k, one), FoTerm::abs(j))));
            FoTermPtr prod = FoTerm::binop(FoOp::Mul, i, j);
            FormulaPtr pos, neg;
            if (t->op == MgcOp::Div) {
                pos = mk_and(mk_cmp(prod, CmpRel::Ge, zero), mk_cmp(z, CmpRel::Eq, k));
                neg = mk_and(mk_cmp(prod, CmpRel::Lt, zero),
                             mk_cmp(z, CmpRel::Eq,
                                    FoTerm::binop(FoOp::Sub, zero, k)));
            } else {
                pos = mk_and(mk_cmp(prod, CmpRel::Ge, zero),
                             mk_cmp(z, CmpRel::Eq,
                                    FoTerm::binop(FoOp::Sub, i, FoTerm::binop(FoOp::Mul, k, j))));
                neg = mk_and(mk_cmp(prod, CmpRel::Lt, zero),
                             mk_cmp(z, CmpRel::Eq,
                                    FoTerm::binop(FoOp::Add, i, FoTerm::binop(FoOp::Mul, k, j))));
            }
            FormulaPtr body = mk_and({v1, v2, range, mk_or(pos, neg)});
            return mk_exists(i->var, Sort::Integer,
                             mk_exists(j->var, Sort::Integer,
                                       mk_exists(k->var, Sort::Integer, body)));
        }
        case MgcOp::Interval: {
            FoTermPtr k = fresh.fresh_integer();
            FormulaPtr v1 = val(t->lhs, i, fresh);
            FormulaPtr v2 = val(t->rhs, j, fresh);
            FormulaPtr range = mk_and(mk_cmp(i, CmpRel::Le, k), mk_cmp(k, CmpRel::Le, j));
            FormulaPtr eq = mk_cmp(z, CmpRel::Eq, k);
            FormulaPtr body = mk_and({v1, v2, range, eq});
            return mk_exists(i->var, Sort::Integer,
                             mk_exists(j->var, Sort::Integer,
                                       mk_exists(k->var, Sort::Integer, body)));
        }
    }
    throw std::logic_error("unreachable val clause");
}

// ---------------------------------------------------------------------------
// tau^B
// ---------------------------------------------------------------------------

namespace {

CmpRel to_rel(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return CmpRel::Eq;
        case CmpOp::Ne: return CmpRel::Ne;
        case CmpOp::Lt: return CmpRel::Lt;
        case CmpOp::Gt: return CmpRel::Gt;
        case CmpOp::Le: return CmpRel::Le;
        case CmpOp::Ge: return CmpRel::Ge;
    }
    return CmpRel::Eq;
}

}  // namespace

FormulaPtr tau_b(const MgcLiteral& lit, FreshVars& fresh) {
    std::vector<FoTermPtr> zs;
    std::vector<FormulaPtr> vals;
    zs.reserve(lit.atom.args.size());
    for (const auto& t : lit.atom.args) {
        FoTermPtr z = fresh.fresh_general();
        zs.push_back(z);
        vals.push_back(val(t, z, fresh));
    }
    PredRef p;
    p.kind = PredKind::Plain;
    p.name = lit.atom.pred;
    p.arity = static_cast<int>(zs.size());
    FormulaPtr atom = mk_atom(p, std::vector<FoTermPtr>(zs.begin(), zs.end()));
    if (lit.negations == 1)
        atom = mk_not(atom);
    else if (lit.negations == 2)
        atom = mk_not(mk_not(atom));
    std::vector<FormulaPtr> conj = vals;
    conj.push_back(atom);
    FormulaPtr body = mk_and(conj);
    for (auto it = zs.rbegin(); it != zs.rend(); ++it)
        body = mk_exists((*it)->var, Sort::General, body);
    return body;
}

FormulaPtr tau_b(const MgcComparison& cmp, FreshVars& fresh) {
    FoTermPtr z1 = fresh.fresh_general();
    FoTermPtr z2 = fresh.fresh_general();
    FormulaPtr v1 = val(cmp.lhs, z1, fresh);
    FormulaPtr v2 = val(cmp.rhs, z2, fresh);
    FormulaPtr rel = mk_cmp(z1, to_rel(cmp.op), z2);
    return mk_exists(z1->var, Sort::General,
                     mk_exists(z2->var, Sort::General, mk_and({v1, v2, rel})));
}

FormulaPtr tau_b(const Conjunct& c, FreshVars& fresh) {
    return c.kind == Conjunct::Kind::Literal ? tau_b(c.lit, fresh) : tau_b(c.cmp, fresh);
}

// ---------------------------------------------------------------------------
// Aggregate atoms
// ---------------------------------------------------------------------------

namespace {

// Variables of L in first-occurrence order (terms read left to right).
void ordered_vars(const MgcTermPtr& t, std::vector<std::string>& out) {
    switch (t->kind) {
        case MgcTerm::Kind::Precomputed:
            return;
        case MgcTerm::Kind::Variable:
            if (std::find(out.begin(), out.end(), t->var) == out.end()) out.push_back(t->var);
            return;
        case MgcTerm::Kind::Abs:
            ordered_vars(t->lhs, out);
            return;
        case MgcTerm::Kind::BinOp:
            ordered_vars(t->lhs, out);
            ordered_vars(t->rhs, out);
            return;
    }
}

std::vector<std::string> condition_vars(const AggregateElement& e) {
    std::vector<std::string> out;
    for (const Conjunct& c : e.condition) {
        if (c.kind == Conjunct::Kind::Literal) {
            for (const auto& t : c.lit.atom.args) ordered_vars(t, out);
        } else {
            ordered_vars(c.cmp.lhs, out);
            ordered_vars(c.cmp.rhs, out);
        }
    }
    return out;
}

}  // namespace

FormulaPtr tau_aggregate(const MgcAggregate& agg, const VariableClasses& classes,
                         FamilyRegistry& registry, FreshVars& fresh) {
    if (agg.rel == AggRel::Eq)
        throw std::invalid_argument("aggregate must be desugared before translation");
    for (const std::string& x : agg.element.tuple)
        if (classes.global.count(x)) throw ImpurityError(Impurity{x, 0});

    std::vector<std::string> lvars = condition_vars(agg.element);
    std::vector<std::string> v_vars;  // global variables of L, first occurrence order
    std::vector<std::string> w_vars;  // local variables of L outside X
    for (const std::string& v : lvars) {
        if (classes.global.count(v)) {
            v_vars.push_back(v);
        } else if (std::find(agg.element.tuple.begin(), agg.element.tuple.end(), v) ==
                   agg.element.tuple.end()) {
            w_vars.push_back(v);
        }
    }

    // The family body gets its own fresh scope.
    FreshVars body_fresh;
    std::vector<FormulaPtr> conj;
    conj.reserve(agg.element.condition.size());
    for (const Conjunct& c : agg.element.condition) conj.push_back(tau_b(c, body_fresh));
    FormulaPtr body = mk_and(conj);
    for (auto it = w_vars.rbegin(); it != w_vars.rend(); ++it)
        body = mk_exists(*it, Sort::General, body);

    int fam = registry.intern(agg.element.tuple, v_vars, body);

    FoTermPtr c = fresh.fresh_general();
    FormulaPtr bound_val = val(agg.bound, c, fresh);
    std::vector<FoTermPtr> args;
    for (const std::string& v : v_vars) args.push_back(FoTerm::variable(v, Sort::General));
    args.push_back(c);
    PredKind kind = agg.rel == AggRel::Geq ? PredKind::Atleast : PredKind::Atmost;
    FormulaPtr atom = mk_family_atom(kind, registry, fam, std::move(args));
    return mk_exists(c->var, Sort::General, mk_and(bound_val, atom));
}

// ---------------------------------------------------------------------------
// tau*
// ---------------------------------------------------------------------------

FormulaPtr tau_star_rule(const Rule& rule, FamilyRegistry& registry) {
    if (auto imp = check_pure(rule)) throw ImpurityError(*imp);
    Rule r = desugar_count_eq(rule);
    VariableClasses classes = classify_variables(r);

    FreshVars fresh;
    // The head value tuple draws fresh variables first so single-rule
    // translations read like the worked examples.
    std::vector<FoTermPtr> zs;
    std::vector<FormulaPtr> head_vals;
    if (r.head_kind != Rule::HeadKind::Constraint) {
        for (std::size_t i = 0; i < r.head.args.size(); ++i) zs.push_back(fresh.fresh_general());
    }

    std::vector<FormulaPtr> body_parts;
    for (const BodyElement& e : r.body) {
        switch (e.kind) {
            case BodyElement::Kind::Literal:
                body_parts.push_back(tau_b(e.lit, fresh));
                break;
            case BodyElement::Kind::Comparison:
                body_parts.push_back(tau_b(e.cmp, fresh));
                break;
            case BodyElement::Kind::Aggregate:
                body_parts.push_back(tau_aggregate(e.agg, classes, registry, fresh));
                break;
        }
    }

    if (r.head_kind == Rule::HeadKind::Constraint)
        return universal_closure(mk_not(mk_and(body_parts)));

    for (std::size_t i = 0; i < zs.size(); ++i)
        head_vals.push_back(val(r.head.args[i], zs[i], fresh));

    PredRef p;
    p.kind = PredKind::Plain;
    p.name = r.head.pred;
    p.arity = static_cast<int>(zs.size());
    FormulaPtr head_atom = mk_atom(p, std::vector<FoTermPtr>(zs.begin(), zs.end()));
    FormulaPtr consequent = r.head_kind == Rule::HeadKind::Basic
                                ? head_atom
                                : mk_or(head_atom, mk_not(head_atom));

    std::vector<FormulaPtr> antecedent = body_parts;
    antecedent.insert(antecedent.end(), head_vals.begin(), head_vals.end());
    FormulaPtr impl = antecedent.empty() ? consequent
                                         : mk_implies(mk_and(antecedent), consequent);
    return universal_closure(impl);
}

FormulaPtr tau_star_program(const Program& prog, FamilyRegistry& registry) {
    if (prog.rules.empty()) return mk_true();
    std::vector<FormulaPtr> parts;
    parts.reserve(prog.rules.size());
    for (const Rule& r : prog.rules) parts.push_back(tau_star_rule(r, registry));
    return mk_and(parts);
}

// ---------------------------------------------------------------------------
// Equality elimination
// ---------------------------------------------------------------------------

namespace {

void flatten_and(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
    if (f->kind == Formula::Kind::And) {
        flatten_and(f->a, out);
        flatten_and(f->b, out);
    } else {
        out.push_back(f);
    }
}

bool substitutable(Sort var_sort, const FoTermPtr& t) {
    return var_sort == Sort::General || t->sort() == Sort::Integer;
}

// Looks for a conjunct Z = t (or t = Z) with Z the quantified variable and
// Z not occurring in t; returns the remaining conjuncts.
bool extract_binding(const std::vector<FormulaPtr>& conj, const std::string& var, Sort var_sort,
                     FoTermPtr& binding, std::vector<FormulaPtr>& rest) {
    for (std::size_t i = 0; i < conj.size(); ++i) {
        const FormulaPtr& c = conj[i];
        if (c->kind != Formula::Kind::Cmp || c->rel != CmpRel::Eq) continue;
        FoTermPtr t;
        if (c->tlhs->kind == FoTerm::Kind::Variable && c->tlhs->var == var)
            t = c->trhs;
        else if (c->trhs->kind == FoTerm::Kind::Variable && c->trhs->var == var)
            t = c->tlhs;
        else
            continue;
        std::set<std::string> tv;
        collect_vars(t, tv);
        if (tv.count(var)) continue;
        if (!substitutable(var_sort, t)) continue;
        binding = t;
        rest.assign(conj.begin(), conj.end());
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(i));
        return true;
    }
    return false;
}

}  // namespace

FormulaPtr simplify_equalities(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Cmp:
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Not:
            return mk_not(simplify_equalities(f->a));
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            Formula g;
            g.kind = f->kind;
            g.a = simplify_equalities(f->a);
            g.b = simplify_equalities(f->b);
            return std::make_shared<Formula>(std::move(g));
        }
        case Formula::Kind::Exists: {
            FormulaPtr body = simplify_equalities(f->a);
            std::vector<FormulaPtr> conj;
            flatten_and(body, conj);
            FoTermPtr binding;
            std::vector<FormulaPtr> rest;
            if (extract_binding(conj, f->var, f->var_sort, binding, rest)) {
                if (rest.empty()) return mk_true();
                FormulaPtr remaining = mk_and(rest);
                return simplify_equalities(substitute(remaining, f->var, binding));
            }
            return mk_exists(f->var, f->var_sort, body);
        }
        case Formula::Kind::Forall: {
            FormulaPtr body = simplify_equalities(f->a);
            if (body->kind == Formula::Kind::Implies) {
                std::vector<FormulaPtr> conj;
                flatten_and(body->a, conj);
                FoTermPtr binding;
                std::vector<FormulaPtr> rest;
                if (extract_binding(conj, f->var, f->var_sort, binding, rest)) {
                    FormulaPtr impl = rest.empty()
                                          ? body->b
                                          : mk_implies(mk_and(rest), body->b);
                    return simplify_equalities(substitute(impl, f->var, binding));
                }
            }
            return mk_forall(f->var, f->var_sort, body);
        }
    }
    return f;
}

}  // namespace mgc
