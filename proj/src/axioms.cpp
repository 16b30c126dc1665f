#include "mgc/axioms.hpp"

#include <algorithm>

namespace mgc {

namespace {

std::string fresh_avoiding(const std::string& base, const std::set<std::string>& avoid) {
    if (!avoid.count(base)) return base;
    for (int i = 1;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!avoid.count(cand)) return cand;
    }
}

std::vector<FoTermPtr> general_vars(const std::vector<std::string>& names) {
    std::vector<FoTermPtr> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(FoTerm::variable(n, Sort::General));
    return out;
}

FoTermPtr numeral_term(std::int64_t n) {
    return FoTerm::constant_term(PrecomputedTerm::numeral(n));
}

std::vector<std::pair<std::string, Sort>> general_binders(const std::vector<std::string>& names) {
    std::vector<std::pair<std::string, Sort>> out;
    for (const auto& n : names) out.emplace_back(n, Sort::General);
    return out;
}

}  // namespace

std::array<FormulaPtr, 3> d0_axioms(const FamilyRegistry& reg, int family) {
    const PredicateFamily& fam = reg.family(family);
    if (fam.x_vars.empty())
        throw std::invalid_argument("Start axioms need a nonempty X tuple");

    std::set<std::string> used(fam.x_vars.begin(), fam.x_vars.end());
    used.insert(fam.v_vars.begin(), fam.v_vars.end());
    std::string n_name = fresh_avoiding("N", used);
    used.insert(n_name);
    FoTermPtr n = FoTerm::variable(n_name, Sort::Integer);

    std::vector<FoTermPtr> xs = general_vars(fam.x_vars);
    std::vector<FoTermPtr> vs = general_vars(fam.v_vars);

    auto start_at = [&](const std::vector<FoTermPtr>& first, FoTermPtr last) {
        std::vector<FoTermPtr> args = first;
        args.insert(args.end(), vs.begin(), vs.end());
        args.push_back(std::move(last));
        return mk_family_atom(PredKind::Start, reg, family, std::move(args));
    };

    // Forall X V N (N <= 0 -> Start(X,V,N))
    FormulaPtr ax1 = universal_closure(
        mk_implies(mk_cmp(n, CmpRel::Le, numeral_term(0)), start_at(xs, n)));

    // Forall X V (Start(X,V,1) <-> F)
    FormulaPtr ax2 = universal_closure(mk_iff(start_at(xs, numeral_term(1)), fam.body));

    // Forall X V N (N > 0 -> (Start(X,V,N+1) <-> F & Exists U (X < U & Start(U,V,N))))
    std::vector<std::string> u_names;
    for (const auto& x : fam.x_vars) {
        std::string u = fresh_avoiding(fam.x_vars.size() == 1 ? "U" : "U" + x, used);
        used.insert(u);
        u_names.push_back(u);
    }
    std::vector<FoTermPtr> us = general_vars(u_names);
    FormulaPtr chain = mk_exists(
        general_binders(u_names),
        mk_and(lex_less(xs, us), start_at(us, n)));
    FormulaPtr rhs = mk_and(fam.body, chain);
    FormulaPtr succ = start_at(xs, FoTerm::binop(FoOp::Add, n, numeral_term(1)));
    FormulaPtr ax3 = universal_closure(
        mk_implies(mk_cmp(n, CmpRel::Gt, numeral_term(0)), mk_iff(succ, rhs)));

    return {ax1, ax2, ax3};
}

std::array<FormulaPtr, 2> d1_axioms(const FamilyRegistry& reg, int family) {
    const PredicateFamily& fam = reg.family(family);

    std::set<std::string> used(fam.x_vars.begin(), fam.x_vars.end());
    used.insert(fam.v_vars.begin(), fam.v_vars.end());
    std::string y_name = fresh_avoiding("Y", used);
    used.insert(y_name);
    std::string n_name = fresh_avoiding("N", used);
    FoTermPtr y = FoTerm::variable(y_name, Sort::General);
    FoTermPtr n = FoTerm::variable(n_name, Sort::Integer);

    std::vector<FoTermPtr> xs = general_vars(fam.x_vars);
    std::vector<FoTermPtr> vs = general_vars(fam.v_vars);

    std::vector<FoTermPtr> start_args = xs;
    start_args.insert(start_args.end(), vs.begin(), vs.end());
    start_args.push_back(n);
    FormulaPtr start = mk_family_atom(PredKind::Start, reg, family, start_args);

    std::vector<FoTermPtr> count_args = vs;
    count_args.push_back(y);

    std::vector<std::pair<std::string, Sort>> inner = general_binders(fam.x_vars);
    inner.emplace_back(n_name, Sort::Integer);

    FormulaPtr atleast = mk_family_atom(PredKind::Atleast, reg, family, count_args);
    FormulaPtr d1a = universal_closure(mk_iff(
        atleast,
        mk_exists(inner, mk_and(start, mk_cmp(n, CmpRel::Ge, y)))));

    FormulaPtr atmost = mk_family_atom(PredKind::Atmost, reg, family, count_args);
    FormulaPtr d1b = universal_closure(mk_iff(
        atmost,
        mk_forall(inner, mk_implies(start, mk_cmp(n, CmpRel::Le, y)))));

    return {d1a, d1b};
}

namespace {

// Fresh copies X_1..X_n of the tuple xs, avoiding the given names.
std::vector<std::vector<FoTermPtr>> fresh_tuples(const std::vector<std::string>& xs, int n,
                                                 std::set<std::string> avoid,
                                                 std::vector<std::pair<std::string, Sort>>& binders) {
    std::vector<std::vector<FoTermPtr>> tuples;
    for (int i = 1; i <= n; ++i) {
        std::vector<FoTermPtr> tuple;
        for (const std::string& x : xs) {
            std::string name = fresh_avoiding(x + std::to_string(i), avoid);
            avoid.insert(name);
            binders.emplace_back(name, Sort::General);
            tuple.push_back(FoTerm::variable(name, Sort::General));
        }
        tuples.push_back(std::move(tuple));
    }
    return tuples;
}

FormulaPtr subst_tuple(FormulaPtr f, const std::vector<std::string>& xs,
                       const std::vector<FoTermPtr>& tuple) {
    for (std::size_t i = 0; i < xs.size(); ++i) f = substitute(f, xs[i], tuple[i]);
    return f;
}

FormulaPtr tuple_eq(const std::vector<FoTermPtr>& a, const std::vector<FoTermPtr>& b) {
    std::vector<FormulaPtr> eqs;
    for (std::size_t i = 0; i < a.size(); ++i) eqs.push_back(mk_cmp(a[i], CmpRel::Eq, b[i]));
    return mk_and(eqs);
}

}  // namespace

FormulaPtr exists_geq(const PrecomputedTerm& r, const std::vector<std::string>& xs,
                      const FormulaPtr& f) {
    if (xs.empty()) throw std::invalid_argument("exists_geq needs a nonempty tuple");
    if (r.is_numeral()) {
        if (r.value <= 0) return mk_true();
        int n = static_cast<int>(r.value);
        std::set<std::string> avoid = free_var_names(f);
        avoid.insert(xs.begin(), xs.end());
        std::vector<std::pair<std::string, Sort>> binders;
        auto tuples = fresh_tuples(xs, n, avoid, binders);
        std::vector<FormulaPtr> conj;
        for (const auto& tup : tuples) conj.push_back(subst_tuple(f, xs, tup));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                conj.push_back(mk_not(tuple_eq(tuples[i], tuples[j])));
        return mk_exists(binders, mk_and(conj));
    }
    // Symbolic constants and other symbols sit above every numeral.
    return mk_false();
}

FormulaPtr exists_leq(const PrecomputedTerm& r, const std::vector<std::string>& xs,
                      const FormulaPtr& f) {
    if (xs.empty()) throw std::invalid_argument("exists_leq needs a nonempty tuple");
    if (r.is_numeral()) {
        if (r.value < 0) return mk_false();
        int n = static_cast<int>(r.value);
        std::set<std::string> avoid = free_var_names(f);
        avoid.insert(xs.begin(), xs.end());
        std::vector<std::pair<std::string, Sort>> binders;
        auto tuples = fresh_tuples(xs, n + 1, avoid, binders);
        std::vector<FormulaPtr> ante;
        for (const auto& tup : tuples) ante.push_back(subst_tuple(f, xs, tup));
        std::vector<FormulaPtr> eqs;
        for (int i = 0; i < n + 1; ++i)
            for (int j = i + 1; j < n + 1; ++j) eqs.push_back(tuple_eq(tuples[i], tuples[j]));
        return mk_forall(binders, mk_implies(mk_and(ante), mk_or(eqs)));
    }
    return mk_true();
}

FormulaPtr defs_axiom(PredKind kind, const FamilyRegistry& reg, int family,
                      const PrecomputedTerm& r) {
    if (kind != PredKind::Atleast && kind != PredKind::Atmost)
        throw std::invalid_argument("defs_axiom expects Atleast or Atmost");
    const PredicateFamily& fam = reg.family(family);
    std::vector<FoTermPtr> args = general_vars(fam.v_vars);
    args.push_back(FoTerm::constant_term(r));
    FormulaPtr atom = mk_family_atom(kind, reg, family, std::move(args));
    FormulaPtr expansion = kind == PredKind::Atleast ? exists_geq(r, fam.x_vars, fam.body)
                                                     : exists_leq(r, fam.x_vars, fam.body);
    return universal_closure(mk_iff(atom, expansion));
}

FormulaPtr ind_instance(const FormulaPtr& f, const std::string& n_var) {
    FoTermPtr n = FoTerm::variable(n_var, Sort::Integer);
    FoTermPtr zero = numeral_term(0);
    FormulaPtr base = substitute(f, n_var, zero);
    FormulaPtr nonneg = mk_cmp(n, CmpRel::Ge, zero);
    FormulaPtr step = mk_forall(
        n_var, Sort::Integer,
        mk_implies(mk_and(nonneg, f),
                   substitute(f, n_var, FoTerm::binop(FoOp::Add, n, numeral_term(1)))));
    FormulaPtr conclusion = mk_forall(n_var, Sort::Integer, mk_implies(nonneg, f));
    return universal_closure(mk_implies(mk_and(base, step), conclusion));
}

FormulaPtr exactly_formula(const FamilyRegistry& reg, int family, std::vector<FoTermPtr> v_args,
                           FoTermPtr bound) {
    std::vector<FoTermPtr> args = v_args;
    args.push_back(bound);
    FormulaPtr atleast = mk_family_atom(PredKind::Atleast, reg, family, args);
    FormulaPtr atmost = mk_family_atom(PredKind::Atmost, reg, family, std::move(args));
    return mk_and(atleast, atmost);
}

std::vector<FormulaPtr> std_theory(const StdOptions& opts) {
    std::vector<FormulaPtr> out;
    FoTermPtr x = FoTerm::variable("X", Sort::General);
    FoTermPtr y = FoTerm::variable("Y", Sort::General);
    FoTermPtr z = FoTerm::variable("Z", Sort::General);

    if (opts.order_axioms) {
        out.push_back(universal_closure(mk_not(mk_cmp(x, CmpRel::Lt, x))));
        out.push_back(universal_closure(
            mk_implies(mk_and(mk_cmp(x, CmpRel::Lt, y), mk_cmp(y, CmpRel::Lt, z)),
                       mk_cmp(x, CmpRel::Lt, z))));
        out.push_back(universal_closure(mk_or(
            {mk_cmp(x, CmpRel::Lt, y), mk_cmp(x, CmpRel::Eq, y), mk_cmp(y, CmpRel::Lt, x)})));
    }

    std::vector<std::string> consts(opts.constants.begin(), opts.constants.end());
    FoTermPtr n = FoTerm::variable("N", Sort::Integer);
    for (const std::string& c : consts) {
        // Every numeral lies below every symbolic constant.
        out.push_back(universal_closure(
            mk_cmp(n, CmpRel::Lt, FoTerm::constant_term(PrecomputedTerm::symbolic(c)))));
    }
    for (std::size_t i = 0; i < consts.size(); ++i) {
        for (std::size_t j = i + 1; j < consts.size(); ++j) {
            FoTermPtr ci = FoTerm::constant_term(PrecomputedTerm::symbolic(consts[i]));
            FoTermPtr cj = FoTerm::constant_term(PrecomputedTerm::symbolic(consts[j]));
            out.push_back(mk_cmp(ci, CmpRel::Ne, cj));
            // consts is sorted, so the order fact follows the name order.
            out.push_back(mk_cmp(ci, CmpRel::Lt, cj));
        }
    }

    if (opts.bridge_axioms && opts.numeral_lo <= opts.numeral_hi) {
        // Contiguity over the emitted range: general elements between two
        // numerals are numerals.
        FormulaPtr in_range = mk_and(
            mk_cmp(numeral_term(opts.numeral_lo), CmpRel::Le, x),
            mk_cmp(x, CmpRel::Le, numeral_term(opts.numeral_hi)));
        FormulaPtr is_numeral =
            mk_exists("N", Sort::Integer, mk_cmp(x, CmpRel::Eq, n));
        out.push_back(universal_closure(mk_implies(in_range, is_numeral)));
    }
    return out;
}

std::vector<FormulaPtr> heuristic_ind_instances(const FamilyRegistry& reg) {
    std::vector<FormulaPtr> out;
    int count = reg.size();

    auto start_atom = [&](int fam_id, const PredicateFamily& fam, FoTermPtr last) {
        std::vector<FoTermPtr> args = general_vars(fam.x_vars);
        auto vs = general_vars(fam.v_vars);
        args.insert(args.end(), vs.begin(), vs.end());
        args.push_back(std::move(last));
        return mk_family_atom(PredKind::Start, reg, fam_id, std::move(args));
    };

    for (int id = 0; id < count; ++id) {
        const PredicateFamily& fam = reg.family(id);
        std::set<std::string> used(fam.x_vars.begin(), fam.x_vars.end());
        used.insert(fam.v_vars.begin(), fam.v_vars.end());
        std::string nn = fresh_avoiding("N", used);
        used.insert(nn);
        std::string kk = fresh_avoiding("K", used);
        FoTermPtr n = FoTerm::variable(nn, Sort::Integer);
        FoTermPtr k = FoTerm::variable(kk, Sort::Integer);
        FoTermPtr n1 = FoTerm::binop(FoOp::Add, n, numeral_term(1));

        std::vector<std::pair<std::string, Sort>> xv = general_binders(fam.x_vars);
        auto vb = general_binders(fam.v_vars);
        xv.insert(xv.end(), vb.begin(), vb.end());

        // Chains shrink: Start(X,V,N+1) -> Start(X,V,N), induction on N.
        out.push_back(ind_instance(
            mk_forall(xv, mk_implies(start_atom(id, fam, n1), start_atom(id, fam, n))), nn));

        // Difference form: Start(X,V,N+K) -> Start(X,V,N), induction on K.
        std::vector<std::pair<std::string, Sort>> xvn = xv;
        xvn.emplace_back(nn, Sort::Integer);
        out.push_back(ind_instance(
            mk_forall(xvn, mk_implies(start_atom(id, fam, FoTerm::binop(FoOp::Add, n, k)),
                                      start_atom(id, fam, n))),
            kk));

        for (int other = 0; other < count; ++other) {
            if (other == id) continue;
            const PredicateFamily& g = reg.family(other);
            if (g.x_vars.size() != fam.x_vars.size() || g.v_vars.size() != fam.v_vars.size())
                continue;
            // Rename the other family's atom onto this family's variables.
            auto other_atom = [&](FoTermPtr last) {
                std::vector<FoTermPtr> args = general_vars(fam.x_vars);
                auto vs = general_vars(fam.v_vars);
                args.insert(args.end(), vs.begin(), vs.end());
                args.push_back(std::move(last));
                return mk_family_atom(PredKind::Start, reg, other, std::move(args));
            };
            out.push_back(ind_instance(
                mk_forall(xv, mk_implies(start_atom(id, fam, n), other_atom(n))), nn));
            out.push_back(ind_instance(
                mk_forall(xv, mk_implies(start_atom(id, fam, n1), other_atom(n))), nn));
        }
    }
    return out;
}

}  // namespace mgc
