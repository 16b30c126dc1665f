#include "mgc/gamma.hpp"

#include <algorithm>

#include "mgc/translate.hpp"

namespace mgc {

FormulaPtr gamma(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            if (f->pred.primed)
                throw std::invalid_argument("gamma expects an unprimed formula");
            return f;
        case Formula::Kind::Cmp:
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Not:
            return mk_not(prime(f->a));
        case Formula::Kind::And:
            return mk_and(gamma(f->a), gamma(f->b));
        case Formula::Kind::Or:
            return mk_or(gamma(f->a), gamma(f->b));
        case Formula::Kind::Implies:
            return mk_and(mk_implies(gamma(f->a), gamma(f->b)),
                          mk_implies(prime(f->a), prime(f->b)));
        case Formula::Kind::Iff:
            throw std::invalid_argument("gamma is undefined on <->; lower it first");
        case Formula::Kind::Forall:
            return mk_forall(f->var, f->var_sort, gamma(f->a));
        case Formula::Kind::Exists:
            return mk_exists(f->var, f->var_sort, gamma(f->a));
    }
    return f;
}

namespace {

FormulaPtr bridge_axiom(const PredRef& unprimed) {
    std::vector<FoTermPtr> args;
    std::vector<std::pair<std::string, Sort>> binders;
    for (int i = 0; i < unprimed.arity; ++i) {
        bool integer = unprimed.kind == PredKind::Start && i == unprimed.arity - 1;
        std::string name = (integer ? "N" : "X" + std::to_string(i + 1));
        Sort sort = integer ? Sort::Integer : Sort::General;
        binders.emplace_back(name, sort);
        args.push_back(FoTerm::variable(name, sort));
    }
    PredRef primed = unprimed;
    primed.primed = true;
    FormulaPtr impl = mk_implies(mk_atom(unprimed, args), mk_atom(primed, args));
    return mk_forall(binders, impl);
}

}  // namespace

std::vector<FormulaPtr> a_axioms(const FamilyRegistry& reg,
                                 const std::vector<PredRef>& plain_preds) {
    std::vector<FormulaPtr> out;
    std::vector<PredRef> sorted = plain_preds;
    std::sort(sorted.begin(), sorted.end());
    for (const PredRef& p : sorted) {
        if (p.kind != PredKind::Plain || p.primed) continue;
        out.push_back(bridge_axiom(p));
    }
    for (int id = 0; id < reg.size(); ++id) {
        const PredicateFamily& fam = reg.family(id);
        for (PredKind kind : {PredKind::Atleast, PredKind::Atmost, PredKind::Start}) {
            PredRef p;
            p.kind = kind;
            p.family = id;
            p.arity = kind == PredKind::Start ? fam.start_arity() : fam.count_arity();
            out.push_back(bridge_axiom(p));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Symbol collection
// ---------------------------------------------------------------------------

namespace {

void term_symbols(const FoTermPtr& t, std::set<std::string>& constants, std::int64_t& lo,
                  std::int64_t& hi, bool& any) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            if (t->constant.is_numeral()) {
                if (!any) {
                    lo = hi = t->constant.value;
                    any = true;
                } else {
                    lo = std::min(lo, t->constant.value);
                    hi = std::max(hi, t->constant.value);
                }
            } else if (t->constant.kind == PrecomputedTerm::Kind::Symbolic) {
                constants.insert(t->constant.name);
            }
            return;
        case FoTerm::Kind::Variable:
            return;
        case FoTerm::Kind::Abs:
            term_symbols(t->lhs, constants, lo, hi, any);
            return;
        case FoTerm::Kind::BinOp:
            term_symbols(t->lhs, constants, lo, hi, any);
            term_symbols(t->rhs, constants, lo, hi, any);
            return;
    }
}

}  // namespace

void collect_symbols(const FormulaPtr& f, std::set<PredRef>& preds,
                     std::set<std::string>& constants, std::int64_t& lo, std::int64_t& hi,
                     bool& any_numeral) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            preds.insert(f->pred);
            for (const auto& a : f->args) term_symbols(a, constants, lo, hi, any_numeral);
            return;
        case Formula::Kind::Cmp:
            term_symbols(f->tlhs, constants, lo, hi, any_numeral);
            term_symbols(f->trhs, constants, lo, hi, any_numeral);
            return;
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Not:
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            collect_symbols(f->a, preds, constants, lo, hi, any_numeral);
            return;
        default:
            collect_symbols(f->a, preds, constants, lo, hi, any_numeral);
            collect_symbols(f->b, preds, constants, lo, hi, any_numeral);
            return;
    }
}

// ---------------------------------------------------------------------------
// Problem assembly
// ---------------------------------------------------------------------------

Problem build_problem(const Program& p1, const Program& p2, const BuildOptions& opts) {
    Problem prob;
    prob.registry = std::make_shared<FamilyRegistry>();

    FormulaPtr f1 = tau_star_program(desugar_count_eq(p1), *prob.registry);
    FormulaPtr f2 = tau_star_program(desugar_count_eq(p2), *prob.registry);

    std::set<PredRef> preds;
    std::set<std::string> constants;
    bool any_numeral = false;
    std::int64_t lo = 0, hi = 0;
    collect_symbols(f1, preds, constants, lo, hi, any_numeral);
    collect_symbols(f2, preds, constants, lo, hi, any_numeral);
    for (int id = 0; id < prob.registry->size(); ++id)
        collect_symbols(prob.registry->family(id).body, preds, constants, lo, hi, any_numeral);
    if (!any_numeral) {
        lo = 0;
        hi = 0;
    }
    lo = std::min<std::int64_t>(lo, 0);
    hi = std::max<std::int64_t>(hi, 1);

    for (const PredRef& p : preds)
        if (p.kind == PredKind::Plain) prob.plain_preds.push_back(p);
    std::sort(prob.plain_preds.begin(), prob.plain_preds.end());
    prob.constants = constants;
    prob.numeral_lo = lo;
    prob.numeral_hi = hi;

    FormulaPtr g1 = gamma(lower_iff(f1));
    FormulaPtr g2 = gamma(lower_iff(f2));
    prob.conjecture = mk_and(mk_implies(g1, g2), mk_implies(g2, g1));

    int counter = 0;
    auto push = [&](const std::string& role, const FormulaPtr& f) {
        prob.axioms.push_back(NamedAxiom{role, role + "_" + std::to_string(++counter), f});
    };

    for (const FormulaPtr& ax : a_axioms(*prob.registry, prob.plain_preds)) push("a_axioms", ax);

    if (opts.heuristic_ind)
        for (const FormulaPtr& f : heuristic_ind_instances(*prob.registry))
            push("gamma_ind", gamma(lower_iff(f)));
    for (const FormulaPtr& f : opts.extra_ind)
        push("gamma_ind", gamma(lower_iff(ind_instance(lower_iff(f), "N"))));

    StdOptions std_opts;
    std_opts.constants = constants;
    std_opts.numeral_lo = lo;
    std_opts.numeral_hi = hi;
    for (const FormulaPtr& f : std_theory(std_opts)) push("std", f);

    for (int id = 0; id < prob.registry->size(); ++id) {
        for (const FormulaPtr& f : d0_axioms(*prob.registry, id))
            push("gamma_d0", gamma(lower_iff(f)));
        for (const FormulaPtr& f : d1_axioms(*prob.registry, id))
            push("gamma_d1", gamma(lower_iff(f)));
    }

    if (opts.with_defs) {
        auto [dlo, dhi] = *opts.with_defs;
        for (int id = 0; id < prob.registry->size(); ++id) {
            for (std::int64_t r = dlo; r <= dhi; ++r) {
                PrecomputedTerm bound = PrecomputedTerm::numeral(r);
                for (PredKind kind : {PredKind::Atleast, PredKind::Atmost})
                    push("defs", gamma(lower_iff(defs_axiom(kind, *prob.registry, id, bound))));
            }
        }
    }

    return prob;
}

}  // namespace mgc
