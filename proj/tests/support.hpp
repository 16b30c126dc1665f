#pragma once

// Shared fixtures for the test suites: the worked example programs and a
// seeded random generator of closed sigma_1 sentences.

#include <random>
#include <string>
#include <vector>

#include "mgc/axioms.hpp"
#include "mgc/oracle.hpp"
#include "mgc/parser.hpp"
#include "mgc/translate.hpp"

namespace testsup {

inline const char* kProgramA =
    "p(a).\n"
    "q(Y) :- count{X : p(X), X != a} = Y.\n";

inline const char* kProgramB =
    "p(a).\n"
    "q(Y-1) :- count{X : p(X)} = Y.\n";

struct Corpus {
    mgc::RegistryPtr registry;
    int fam_simple = -1;   // (X;; p(X))
    int fam_guarded = -1;  // (X;; p(X) & X != a)
    int fam_v = -1;        // (X;(V); p(X) & r(X,V))
    mgc::Universe universe;
    mgc::AtomTable atoms;
    std::mt19937 rng;

    explicit Corpus(unsigned seed = 20240517) : rng(seed) {
        using namespace mgc;
        registry = std::make_shared<FamilyRegistry>();
        FoTermPtr x = FoTerm::variable("X", Sort::General);
        FoTermPtr v = FoTerm::variable("V", Sort::General);
        PredRef p{PredKind::Plain, "p", 1, -1, false};
        PredRef r{PredKind::Plain, "r", 2, -1, false};
        FormulaPtr px = mk_atom(p, {x});
        fam_simple = registry->intern({"X"}, {}, px);
        fam_guarded = registry->intern(
            {"X"}, {},
            mk_and(px, mk_cmp(x, CmpRel::Ne,
                              FoTerm::constant_term(PrecomputedTerm::symbolic("a")))));
        fam_v = registry->intern({"X"}, {"V"}, mk_and(px, mk_atom(r, {x, v})));

        universe = Universe::from_terms({PrecomputedTerm::symbolic("a"),
                                         PrecomputedTerm::numeral(0),
                                         PrecomputedTerm::numeral(1)});
        atoms = AtomTable::build({p, r}, universe);
    }

    int rnd(int n) { return static_cast<int>(rng() % static_cast<unsigned>(n)); }

    mgc::FoTermPtr general_term(const std::vector<std::pair<std::string, mgc::Sort>>& env) {
        using namespace mgc;
        std::vector<std::string> gen_vars;
        for (const auto& [name, sort] : env)
            if (sort == Sort::General) gen_vars.push_back(name);
        int pick = rnd(3 + static_cast<int>(gen_vars.size()));
        switch (pick) {
            case 0: return FoTerm::constant_term(PrecomputedTerm::symbolic("a"));
            case 1: return FoTerm::constant_term(PrecomputedTerm::numeral(0));
            case 2: return FoTerm::constant_term(PrecomputedTerm::numeral(1));
            default: return FoTerm::variable(gen_vars[static_cast<std::size_t>(pick - 3)],
                                             Sort::General);
        }
    }

    mgc::FoTermPtr integer_term(const std::vector<std::pair<std::string, mgc::Sort>>& env,
                                int depth) {
        using namespace mgc;
        std::vector<std::string> int_vars;
        for (const auto& [name, sort] : env)
            if (sort == Sort::Integer) int_vars.push_back(name);
        int options = 2 + static_cast<int>(int_vars.size()) + (depth > 0 ? 2 : 0);
        int pick = rnd(options);
        if (pick == 0) return FoTerm::constant_term(PrecomputedTerm::numeral(rnd(4) - 1));
        if (pick == 1) return FoTerm::constant_term(PrecomputedTerm::numeral(rnd(3)));
        pick -= 2;
        if (pick < static_cast<int>(int_vars.size()))
            return FoTerm::variable(int_vars[static_cast<std::size_t>(pick)], Sort::Integer);
        pick -= static_cast<int>(int_vars.size());
        if (pick == 0) return FoTerm::abs(integer_term(env, depth - 1));
        FoOp op = static_cast<FoOp>(rnd(3));
        return FoTerm::binop(op, integer_term(env, depth - 1), integer_term(env, depth - 1));
    }

    mgc::FoTermPtr any_term(const std::vector<std::pair<std::string, mgc::Sort>>& env) {
        return rnd(3) == 0 ? integer_term(env, 1) : general_term(env);
    }

    mgc::FormulaPtr formula(int depth, std::vector<std::pair<std::string, mgc::Sort>>& env,
                            bool allow_agg) {
        using namespace mgc;
        if (depth <= 0) return leaf(env, allow_agg);
        switch (rnd(8)) {
            case 0:
                return leaf(env, allow_agg);
            case 1:
                return mk_not(formula(depth - 1, env, allow_agg));
            case 2:
                return mk_and(formula(depth - 1, env, allow_agg),
                              formula(depth - 1, env, allow_agg));
            case 3:
                return mk_or(formula(depth - 1, env, allow_agg),
                             formula(depth - 1, env, allow_agg));
            case 4:
                return mk_implies(formula(depth - 1, env, allow_agg),
                                  formula(depth - 1, env, allow_agg));
            case 5:
                return mk_iff(formula(depth - 1, env, allow_agg),
                              formula(depth - 1, env, allow_agg));
            default: {
                bool forall = rnd(2) == 0;
                bool integer = rnd(3) == 0;
                std::string name = (integer ? "N" : "W") + std::to_string(env.size());
                env.emplace_back(name, integer ? Sort::Integer : Sort::General);
                FormulaPtr body = formula(depth - 1, env, allow_agg);
                env.pop_back();
                return forall ? mk_forall(name, integer ? Sort::Integer : Sort::General, body)
                              : mk_exists(name, integer ? Sort::Integer : Sort::General, body);
            }
        }
    }

    mgc::FormulaPtr leaf(std::vector<std::pair<std::string, mgc::Sort>>& env, bool allow_agg) {
        using namespace mgc;
        int pick = rnd(allow_agg ? 6 : 4);
        switch (pick) {
            case 0:
                return rnd(2) ? mk_true() : mk_false();
            case 1: {
                CmpRel rel = static_cast<CmpRel>(rnd(6));
                if (rnd(2))
                    return mk_cmp(integer_term(env, 1), rel, integer_term(env, 1));
                return mk_cmp(general_term(env), rel, general_term(env));
            }
            case 2:
                return mk_atom(PredRef{PredKind::Plain, "p", 1, -1, false},
                               {general_term(env)});
            case 3:
                return mk_atom(PredRef{PredKind::Plain, "r", 2, -1, false},
                               {general_term(env), general_term(env)});
            case 4: {
                int fam = rnd(2) ? fam_simple : fam_guarded;
                PredKind kind = rnd(2) ? PredKind::Atleast : PredKind::Atmost;
                return mk_family_atom(kind, *registry, fam, {any_term(env)});
            }
            default: {
                PredKind kind = rnd(2) ? PredKind::Atleast : PredKind::Atmost;
                return mk_family_atom(kind, *registry, fam_v,
                                      {general_term(env), any_term(env)});
            }
        }
    }

    mgc::FormulaPtr closed_sentence(int depth, bool allow_agg = true) {
        std::vector<std::pair<std::string, mgc::Sort>> env;
        return mgc::universal_closure(formula(depth, env, allow_agg));
    }

    mgc::HTPair random_pair() {
        std::uint64_t all = atoms.size() == 64 ? ~0ull : ((1ull << atoms.size()) - 1);
        std::uint64_t there = rng() & all;
        std::uint64_t here = rng() & there;
        return mgc::HTPair{here, there};
    }
};

}  // namespace testsup
