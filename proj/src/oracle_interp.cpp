#include <algorithm>

#include "mgc/axioms.hpp"
#include "mgc/gamma.hpp"
#include "mgc/oracle.hpp"

// Environment-driven evaluators for sigma_1 sentences under an HT pair and
// for sigma_2' sentences under a prime interpretation. These never
// materialize a ground DAG; quantifiers loop over the margin-widened
// domains directly.

namespace mgc {

namespace {

using Env = std::map<std::string, PrecomputedTerm>;

PrecomputedTerm eval_env_term(const FoTermPtr& t, const Env& env) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            return t->constant;
        case FoTerm::Kind::Variable: {
            auto it = env.find(t->var);
            if (it == env.end()) throw std::logic_error("unbound variable " + t->var);
            return it->second;
        }
        case FoTerm::Kind::Abs: {
            PrecomputedTerm v = eval_env_term(t->lhs, env);
            if (!v.is_numeral()) throw std::logic_error("|.| applied to a non-numeral");
            return PrecomputedTerm::numeral(v.value < 0 ? -v.value : v.value);
        }
        case FoTerm::Kind::BinOp: {
            PrecomputedTerm a = eval_env_term(t->lhs, env);
            PrecomputedTerm b = eval_env_term(t->rhs, env);
            if (!a.is_numeral() || !b.is_numeral())
                throw std::logic_error("arithmetic on non-numerals");
            switch (t->op) {
                case FoOp::Add: return PrecomputedTerm::numeral(checked_add(a.value, b.value));
                case FoOp::Sub: return PrecomputedTerm::numeral(checked_sub(a.value, b.value));
                case FoOp::Mul: return PrecomputedTerm::numeral(checked_mul(a.value, b.value));
            }
            break;
        }
    }
    throw std::logic_error("unreachable");
}

struct EvalContext {
    const Universe* u;
    const AtomTable* atoms;
    const FamilyRegistry* reg;
    std::vector<PrecomputedTerm> general;
    std::vector<std::int64_t> integers;
    HTPair pair;
};

EvalContext make_context(const Universe& u, const AtomTable& atoms, const FamilyRegistry* reg,
                         const HTPair& pair, const GroundOptions& opts) {
    EvalContext ctx;
    ctx.u = &u;
    ctx.atoms = &atoms;
    ctx.reg = reg;
    ctx.pair = pair;
    std::int64_t lo = u.window_lo, hi = u.window_hi;
    if (lo > hi) {
        lo = 0;
        hi = -1;
    }
    for (std::int64_t n = lo - opts.margin; n <= hi + opts.margin; ++n) ctx.integers.push_back(n);
    ctx.general = u.terms;
    for (std::int64_t n = lo - opts.margin; n <= hi + opts.margin; ++n) {
        if (n >= lo && n <= hi) continue;
        ctx.general.push_back(PrecomputedTerm::numeral(n));
    }
    std::sort(ctx.general.begin(), ctx.general.end());
    ctx.general.erase(std::unique(ctx.general.begin(), ctx.general.end()), ctx.general.end());
    return ctx;
}

std::pair<bool, bool> eval_ht_rec(const FormulaPtr& f, Env& env, const EvalContext& ctx);

// (classical, here) counts of witness tuples of the family body, optionally
// restricted to tuples >= min_x, with V bound to vs.
std::pair<std::int64_t, std::int64_t> witness_counts(const PredicateFamily& fam,
                                                     const std::vector<PrecomputedTerm>& vs,
                                                     const std::vector<PrecomputedTerm>* min_x,
                                                     const EvalContext& ctx) {
    std::size_t nx = fam.x_vars.size();
    std::vector<std::size_t> idx(nx, 0);
    std::int64_t c_cnt = 0, h_cnt = 0;
    const auto& dom = ctx.general;
    for (;;) {
        bool admissible = true;
        if (min_x) {
            int cmp = 0;
            for (std::size_t i = 0; i < nx; ++i) {
                const PrecomputedTerm& ti = dom[idx[i]];
                if (ti < (*min_x)[i]) { cmp = -1; break; }
                if ((*min_x)[i] < ti) { cmp = 1; break; }
            }
            admissible = cmp >= 0;
        }
        if (admissible) {
            Env env;
            for (std::size_t i = 0; i < nx; ++i) env[fam.x_vars[i]] = dom[idx[i]];
            for (std::size_t i = 0; i < fam.v_vars.size(); ++i) env[fam.v_vars[i]] = vs[i];
            auto [c, h] = eval_ht_rec(fam.body, env, ctx);
            c_cnt += c;
            h_cnt += h;
        }
        int pos = static_cast<int>(nx) - 1;
        while (pos >= 0) {
            if (++idx[static_cast<std::size_t>(pos)] < dom.size()) break;
            idx[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
    }
    return {c_cnt, h_cnt};
}

// (classical, here) value of a ground family atom under the standard
// interpretation of its family.
std::pair<bool, bool> family_value(PredKind kind, int family,
                                   const std::vector<PrecomputedTerm>& args,
                                   const EvalContext& ctx) {
    if (!ctx.reg) throw std::logic_error("family atom without a registry");
    const PredicateFamily& fam = ctx.reg->family(family);
    std::size_t nx = fam.x_vars.size();
    std::size_t nv = fam.v_vars.size();

    if (kind == PredKind::Start) {
        std::vector<PrecomputedTerm> xs(args.begin(), args.begin() + static_cast<long>(nx));
        std::vector<PrecomputedTerm> vs(args.begin() + static_cast<long>(nx),
                                        args.begin() + static_cast<long>(nx + nv));
        const PrecomputedTerm& bound = args.back();
        if (!bound.is_numeral()) throw std::logic_error("Start bound must be a numeral");
        if (bound.value <= 0) return {true, true};
        Env env;
        for (std::size_t i = 0; i < nx; ++i) env[fam.x_vars[i]] = xs[i];
        for (std::size_t i = 0; i < nv; ++i) env[fam.v_vars[i]] = vs[i];
        auto [gc, gh] = eval_ht_rec(fam.body, env, ctx);
        auto [cc, hc] = witness_counts(fam, vs, &xs, ctx);
        return {gc && cc >= bound.value, gh && hc >= bound.value};
    }

    std::vector<PrecomputedTerm> vs(args.begin(), args.begin() + static_cast<long>(nv));
    const PrecomputedTerm& bound = args.back();
    if (kind == PredKind::Atleast) {
        if (!bound.is_numeral()) return {false, false};
        if (bound.value <= 0) return {true, true};
        auto [cc, hc] = witness_counts(fam, vs, nullptr, ctx);
        return {cc >= bound.value, hc >= bound.value};
    }
    // Atmost: the HT value agrees with the classical there-world value.
    if (!bound.is_numeral()) return {true, true};
    if (bound.value < 0) return {false, false};
    auto [cc, hc] = witness_counts(fam, vs, nullptr, ctx);
    (void)hc;
    bool v = cc <= bound.value;
    return {v, v};
}

std::pair<bool, bool> eval_ht_rec(const FormulaPtr& f, Env& env, const EvalContext& ctx) {
    switch (f->kind) {
        case Formula::Kind::True:
            return {true, true};
        case Formula::Kind::False:
            return {false, false};
        case Formula::Kind::Cmp: {
            bool v = eval_ground_cmp(eval_env_term(f->tlhs, env), f->rel,
                                     eval_env_term(f->trhs, env));
            return {v, v};
        }
        case Formula::Kind::Atom: {
            if (f->pred.primed)
                throw std::invalid_argument("HT evaluation expects unprimed formulas");
            std::vector<PrecomputedTerm> args;
            args.reserve(f->args.size());
            for (const auto& a : f->args) args.push_back(eval_env_term(a, env));
            if (f->pred.kind == PredKind::Plain) {
                int id = ctx.atoms->lookup(f->pred.name, args);
                if (id < 0) return {false, false};
                return {((ctx.pair.there >> id) & 1) != 0, ((ctx.pair.here >> id) & 1) != 0};
            }
            return family_value(f->pred.kind, f->pred.family, args, ctx);
        }
        case Formula::Kind::Not: {
            auto [c, h] = eval_ht_rec(f->a, env, ctx);
            (void)h;
            return {!c, !c};
        }
        case Formula::Kind::And: {
            auto [ca, ha] = eval_ht_rec(f->a, env, ctx);
            if (!ca && !ha) return {false, false};
            auto [cb, hb] = eval_ht_rec(f->b, env, ctx);
            return {ca && cb, ha && hb};
        }
        case Formula::Kind::Or: {
            auto [ca, ha] = eval_ht_rec(f->a, env, ctx);
            if (ca && ha) return {true, true};
            auto [cb, hb] = eval_ht_rec(f->b, env, ctx);
            return {ca || cb, ha || hb};
        }
        case Formula::Kind::Implies: {
            auto [ca, ha] = eval_ht_rec(f->a, env, ctx);
            auto [cb, hb] = eval_ht_rec(f->b, env, ctx);
            bool c = !ca || cb;
            bool h = c && (!ha || hb);
            return {c, h};
        }
        case Formula::Kind::Iff: {
            auto [ca, ha] = eval_ht_rec(f->a, env, ctx);
            auto [cb, hb] = eval_ht_rec(f->b, env, ctx);
            bool c = ca == cb;
            bool h = c && (ha == hb);
            return {c, h};
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            bool forall = f->kind == Formula::Kind::Forall;
            bool c = forall, h = forall;
            auto saved = env.find(f->var) != env.end()
                             ? std::optional<PrecomputedTerm>(env[f->var])
                             : std::nullopt;
            auto step = [&](const PrecomputedTerm& t) {
                env[f->var] = t;
                auto [vc, vh] = eval_ht_rec(f->a, env, ctx);
                if (forall) {
                    c = c && vc;
                    h = h && vh;
                    return !(c || h);  // both already false: stop
                }
                c = c || vc;
                h = h || vh;
                return c && h;  // both already true: stop
            };
            if (f->var_sort == Sort::Integer) {
                for (std::int64_t n : ctx.integers)
                    if (step(PrecomputedTerm::numeral(n))) break;
            } else {
                for (const PrecomputedTerm& t : ctx.general)
                    if (step(t)) break;
            }
            if (saved)
                env[f->var] = *saved;
            else
                env.erase(f->var);
            return {c, h};
        }
    }
    throw std::logic_error("unreachable formula kind");
}

}  // namespace

std::pair<bool, bool> ht_sat_formula(const FormulaPtr& f, const HTPair& pair, const Universe& u,
                                     const AtomTable& atoms, const FamilyRegistry* registry,
                                     const GroundOptions& opts) {
    if (!pair.valid()) throw std::invalid_argument("HT pair requires here <= there");
    EvalContext ctx = make_context(u, atoms, registry, pair, opts);
    Env env;
    FormulaPtr lowered = lower_iff(f);
    if (!free_vars(lowered).empty())
        throw std::invalid_argument("HT evaluation expects a sentence");
    return eval_ht_rec(lowered, env, ctx);
}

bool eval_agg_atom(const HTPair& pair, PredKind kind, const FamilyRegistry& reg, int family,
                   const std::vector<PrecomputedTerm>& v_args, const PrecomputedTerm& bound,
                   const Universe& u, const AtomTable& atoms, const GroundOptions& opts) {
    const PredicateFamily& fam = reg.family(family);
    FormulaPtr expansion = kind == PredKind::Atleast ? exists_geq(bound, fam.x_vars, fam.body)
                                                     : exists_leq(bound, fam.x_vars, fam.body);
    for (std::size_t i = 0; i < fam.v_vars.size(); ++i)
        expansion = substitute(expansion, fam.v_vars[i], FoTerm::constant_term(v_args[i]));
    GroundFormula g = ground(expansion, u, atoms, &reg, opts);
    return ht_sat(pair, g);
}

// ---------------------------------------------------------------------------
// Prime interpretations and the gamma correspondence
// ---------------------------------------------------------------------------

bool PrimeInterp::plain_atom(const std::string& pred, const std::vector<PrecomputedTerm>& args,
                             bool primed) const {
    int id = atoms->lookup(pred, args);
    if (id < 0) return false;
    return primed ? ((pair.there >> id) & 1) != 0 : ((pair.here >> id) & 1) != 0;
}

bool PrimeInterp::family_atom(PredKind kind, int family,
                              const std::vector<PrecomputedTerm>& args, bool primed) const {
    EvalContext ctx = make_context(*universe, *atoms, registry, pair, opts);
    auto [c, h] = family_value(kind, family, args, ctx);
    return primed ? c : h;
}

PrimeInterp build_prime_interp(const HTPair& pair, const Universe& u, const AtomTable& atoms,
                               const FamilyRegistry* registry, const GroundOptions& opts) {
    if (!pair.valid()) throw std::invalid_argument("HT pair requires here <= there");
    PrimeInterp interp;
    interp.universe = &u;
    interp.atoms = &atoms;
    interp.registry = registry;
    interp.pair = pair;
    interp.opts = opts;
    return interp;
}

namespace {

bool classical_rec(const FormulaPtr& f, Env& env, const PrimeInterp& interp,
                   const EvalContext& ctx) {
    switch (f->kind) {
        case Formula::Kind::True:
            return true;
        case Formula::Kind::False:
            return false;
        case Formula::Kind::Cmp:
            return eval_ground_cmp(eval_env_term(f->tlhs, env), f->rel,
                                   eval_env_term(f->trhs, env));
        case Formula::Kind::Atom: {
            std::vector<PrecomputedTerm> args;
            args.reserve(f->args.size());
            for (const auto& a : f->args) args.push_back(eval_env_term(a, env));
            if (f->pred.kind == PredKind::Plain)
                return interp.plain_atom(f->pred.name, args, f->pred.primed);
            return interp.family_atom(f->pred.kind, f->pred.family, args, f->pred.primed);
        }
        case Formula::Kind::Not:
            return !classical_rec(f->a, env, interp, ctx);
        case Formula::Kind::And:
            return classical_rec(f->a, env, interp, ctx) && classical_rec(f->b, env, interp, ctx);
        case Formula::Kind::Or:
            return classical_rec(f->a, env, interp, ctx) || classical_rec(f->b, env, interp, ctx);
        case Formula::Kind::Implies:
            return !classical_rec(f->a, env, interp, ctx) || classical_rec(f->b, env, interp, ctx);
        case Formula::Kind::Iff:
            return classical_rec(f->a, env, interp, ctx) == classical_rec(f->b, env, interp, ctx);
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            bool forall = f->kind == Formula::Kind::Forall;
            bool acc = forall;
            auto saved = env.find(f->var) != env.end()
                             ? std::optional<PrecomputedTerm>(env[f->var])
                             : std::nullopt;
            auto step = [&](const PrecomputedTerm& t) {
                env[f->var] = t;
                bool v = classical_rec(f->a, env, interp, ctx);
                acc = forall ? (acc && v) : (acc || v);
                return forall ? !acc : acc;
            };
            if (f->var_sort == Sort::Integer) {
                for (std::int64_t n : ctx.integers)
                    if (step(PrecomputedTerm::numeral(n))) break;
            } else {
                for (const PrecomputedTerm& t : ctx.general)
                    if (step(t)) break;
            }
            if (saved)
                env[f->var] = *saved;
            else
                env.erase(f->var);
            return acc;
        }
    }
    throw std::logic_error("unreachable formula kind");
}

}  // namespace

bool classical_sat(const FormulaPtr& f, const PrimeInterp& interp) {
    EvalContext ctx =
        make_context(*interp.universe, *interp.atoms, interp.registry, interp.pair, interp.opts);
    Env env;
    if (!free_vars(f).empty())
        throw std::invalid_argument("classical evaluation expects a sentence");
    return classical_rec(f, env, interp, ctx);
}

GammaLemmaReport check_gamma_lemma(const FormulaPtr& f, const HTPair& pair, const Universe& u,
                                   const AtomTable& atoms, const FamilyRegistry* registry,
                                   const GroundOptions& opts) {
    FormulaPtr lowered = lower_iff(f);
    PrimeInterp interp = build_prime_interp(pair, u, atoms, registry, opts);
    bool lhs = classical_sat(gamma(lowered), interp);
    auto [c, h] = ht_sat_formula(lowered, pair, u, atoms, registry, opts);
    (void)c;
    GammaLemmaReport report;
    report.classical_gamma = lhs;
    report.ht = h;
    report.agree = lhs == h;
    return report;
}

}  // namespace mgc
