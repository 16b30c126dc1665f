#include "mgc/emit.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mgc {

namespace {

struct SymbolInfo {
    std::set<PredRef> preds;
    std::set<std::string> constants;
    bool uses_abs = false;
};

void scan_term(const FoTermPtr& t, SymbolInfo& info) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            if (t->constant.kind == PrecomputedTerm::Kind::Symbolic)
                info.constants.insert(t->constant.name);
            else if (t->constant.kind == PrecomputedTerm::Kind::Other)
                throw std::invalid_argument("cannot serialize 'other' precomputed symbols");
            return;
        case FoTerm::Kind::Variable:
            return;
        case FoTerm::Kind::Abs:
            info.uses_abs = true;
            scan_term(t->lhs, info);
            return;
        case FoTerm::Kind::BinOp:
            scan_term(t->lhs, info);
            scan_term(t->rhs, info);
            return;
    }
}

void scan_formula(const FormulaPtr& f, SymbolInfo& info) {
    switch (f->kind) {
        case Formula::Kind::Atom: {
            PredRef unprimed = f->pred;
            unprimed.primed = false;
            info.preds.insert(unprimed);
            for (const auto& a : f->args) scan_term(a, info);
            return;
        }
        case Formula::Kind::Cmp:
            scan_term(f->tlhs, info);
            scan_term(f->trhs, info);
            return;
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Not:
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            scan_formula(f->a, info);
            return;
        case Formula::Kind::Iff:
            throw std::logic_error("iff must be lowered before emission");
        default:
            scan_formula(f->a, info);
            scan_formula(f->b, info);
            return;
    }
}

class Emitter {
  public:
    explicit Emitter(const FamilyRegistry* reg) : registry_(reg) {}

    void collect(const FormulaPtr& f) { scan_formula(f, info_); }

    // Assigns prover-legal names; arity suffixes disambiguate overloaded
    // predicate names.
    void assign_names() {
        std::map<std::string, int> name_count;
        for (const PredRef& p : info_.preds)
            if (p.kind == PredKind::Plain) ++name_count[p.name];
        for (const PredRef& p : info_.preds) {
            std::string base;
            if (p.kind == PredKind::Plain) {
                base = p.name;
                if (name_count[p.name] > 1) base += "_" + std::to_string(p.arity);
            } else {
                if (!registry_) throw std::logic_error("family predicate without a registry");
                base = family_name(p.kind, *registry_, p.family);
            }
            names_[p] = base;
        }
    }

    std::string pred_name(const PredRef& p) const {
        PredRef unprimed = p;
        unprimed.primed = false;
        auto it = names_.find(unprimed);
        if (it == names_.end()) throw std::logic_error("undeclared predicate in emission");
        return (p.primed ? "t_" : "h_") + it->second;
    }

    void declarations(std::ostream& os) const {
        os << "tff(general_type, type, general: $tType).\n";
        os << "tff(int_to_gen_decl, type, int_to_gen: $int > general).\n";
        os << "tff(less_decl, type, less: (general * general) > $o).\n";
        if (info_.uses_abs) os << "tff(iabs_decl, type, iabs: $int > $int).\n";
        for (const std::string& c : info_.constants)
            os << "tff(" << const_name(c) << "_decl, type, " << const_name(c)
               << ": general).\n";
        for (const PredRef& p : info_.preds) {
            for (bool primed : {false, true}) {
                PredRef q = p;
                q.primed = primed;
                os << "tff(" << pred_name(q) << "_decl, type, " << pred_name(q) << ": ";
                if (p.arity == 0) {
                    os << "$o";
                } else {
                    std::vector<std::string> sorts;
                    for (int i = 0; i < p.arity; ++i) {
                        bool integer = p.kind == PredKind::Start && i == p.arity - 1;
                        sorts.push_back(integer ? "$int" : "general");
                    }
                    if (sorts.size() == 1) {
                        os << sorts[0] << " > $o";
                    } else {
                        os << '(';
                        for (std::size_t i = 0; i < sorts.size(); ++i) {
                            if (i) os << " * ";
                            os << sorts[i];
                        }
                        os << ") > $o";
                    }
                }
                os << ").\n";
            }
        }
    }

    // The subsort encoding: int_to_gen embeds the integers into the general
    // order, injectively.
    void bridge_axioms(std::ostream& os) const {
        os << "tff(int_to_gen_order, axiom, ![I: $int, J: $int]: "
              "($less(I, J) <=> less(int_to_gen(I), int_to_gen(J)))).\n";
        os << "tff(int_to_gen_injective, axiom, ![I: $int, J: $int]: "
              "((int_to_gen(I) = int_to_gen(J)) => (I = J))).\n";
        if (info_.uses_abs) {
            os << "tff(iabs_def, axiom, ![I: $int]: "
                  "((($greatereq(I, 0)) => (iabs(I) = I)) & "
                  "(($less(I, 0)) => (iabs(I) = $uminus(I))))).\n";
        }
    }

    std::string formula(const FormulaPtr& f) {
        std::map<std::string, std::string> bound;
        std::ostringstream os;
        emit(os, f, bound);
        return os.str();
    }

  private:
    static std::string const_name(const std::string& c) { return "c_" + c; }

    std::string term_int(const FoTermPtr& t, const std::map<std::string, std::string>& bound) {
        switch (t->kind) {
            case FoTerm::Kind::Constant:
                if (!t->constant.is_numeral())
                    throw std::logic_error("general constant in integer position");
                return std::to_string(t->constant.value);
            case FoTerm::Kind::Variable: {
                auto it = bound.find(t->var);
                return it == bound.end() ? t->var : it->second;
            }
            case FoTerm::Kind::Abs:
                return "iabs(" + term_int(t->lhs, bound) + ")";
            case FoTerm::Kind::BinOp: {
                const char* fn = t->op == FoOp::Add   ? "$sum"
                                 : t->op == FoOp::Sub ? "$difference"
                                                      : "$product";
                return std::string(fn) + "(" + term_int(t->lhs, bound) + ", " +
                       term_int(t->rhs, bound) + ")";
            }
        }
        throw std::logic_error("unreachable");
    }

    std::string term_general(const FoTermPtr& t, const std::map<std::string, std::string>& bound) {
        if (t->sort() == Sort::Integer) return "int_to_gen(" + term_int(t, bound) + ")";
        if (t->kind == FoTerm::Kind::Constant) return const_name(t->constant.name);
        auto it = bound.find(t->var);
        return it == bound.end() ? t->var : it->second;
    }

    std::string cmp(const FormulaPtr& f, const std::map<std::string, std::string>& bound) {
        bool both_int = f->tlhs->sort() == Sort::Integer && f->trhs->sort() == Sort::Integer;
        if (both_int) {
            std::string a = term_int(f->tlhs, bound);
            std::string b = term_int(f->trhs, bound);
            switch (f->rel) {
                case CmpRel::Eq: return "(" + a + " = " + b + ")";
                case CmpRel::Ne: return "(" + a + " != " + b + ")";
                case CmpRel::Lt: return "$less(" + a + ", " + b + ")";
                case CmpRel::Gt: return "$greater(" + a + ", " + b + ")";
                case CmpRel::Le: return "$lesseq(" + a + ", " + b + ")";
                case CmpRel::Ge: return "$greatereq(" + a + ", " + b + ")";
            }
        }
        std::string a = term_general(f->tlhs, bound);
        std::string b = term_general(f->trhs, bound);
        switch (f->rel) {
            case CmpRel::Eq: return "(" + a + " = " + b + ")";
            case CmpRel::Ne: return "(" + a + " != " + b + ")";
            case CmpRel::Lt: return "less(" + a + ", " + b + ")";
            case CmpRel::Gt: return "less(" + b + ", " + a + ")";
            case CmpRel::Le: return "(less(" + a + ", " + b + ") | (" + a + " = " + b + "))";
            case CmpRel::Ge: return "(less(" + b + ", " + a + ") | (" + a + " = " + b + "))";
        }
        throw std::logic_error("unreachable");
    }

    void emit(std::ostream& os, const FormulaPtr& f, std::map<std::string, std::string>& bound) {
        switch (f->kind) {
            case Formula::Kind::True:
                os << "$true";
                return;
            case Formula::Kind::False:
                os << "$false";
                return;
            case Formula::Kind::Cmp:
                os << cmp(f, bound);
                return;
            case Formula::Kind::Atom: {
                os << pred_name(f->pred);
                if (!f->args.empty()) {
                    os << '(';
                    for (std::size_t i = 0; i < f->args.size(); ++i) {
                        if (i) os << ", ";
                        bool integer =
                            f->pred.kind == PredKind::Start && i == f->args.size() - 1;
                        os << (integer ? term_int(f->args[i], bound)
                                       : term_general(f->args[i], bound));
                    }
                    os << ')';
                }
                return;
            }
            case Formula::Kind::Not:
                os << "~(";
                emit(os, f->a, bound);
                os << ')';
                return;
            case Formula::Kind::And:
            case Formula::Kind::Or:
            case Formula::Kind::Implies: {
                const char* op = f->kind == Formula::Kind::And  ? " & "
                                 : f->kind == Formula::Kind::Or ? " | "
                                                                : " => ";
                os << '(';
                emit(os, f->a, bound);
                os << op;
                emit(os, f->b, bound);
                os << ')';
                return;
            }
            case Formula::Kind::Iff:
                throw std::logic_error("iff must be lowered before emission");
            case Formula::Kind::Forall:
            case Formula::Kind::Exists: {
                // Rename shadowed binders so every variable in a TFF formula
                // is bound exactly once on its path.
                std::string name = f->var;
                if (bound.count(f->var)) {
                    int k = 1;
                    while (bound.count(f->var + "_" + std::to_string(k))) ++k;
                    name = f->var + "_" + std::to_string(k);
                }
                auto saved = bound.find(f->var) != bound.end()
                                 ? std::optional<std::string>(bound[f->var])
                                 : std::nullopt;
                bound[f->var] = name;
                os << (f->kind == Formula::Kind::Forall ? "![" : "?[") << name << ": "
                   << (f->var_sort == Sort::Integer ? "$int" : "general") << "]: (";
                emit(os, f->a, bound);
                os << ')';
                if (saved)
                    bound[f->var] = *saved;
                else
                    bound.erase(f->var);
                return;
            }
        }
    }

    const FamilyRegistry* registry_;
    SymbolInfo info_;
    std::map<PredRef, std::string> names_;
};

}  // namespace

std::string emit_problem(const Problem& p) {
    Emitter em(p.registry.get());
    for (const NamedAxiom& ax : p.axioms) em.collect(ax.formula);
    em.collect(p.conjecture);
    // Declared-but-unused symbols are harmless; every A-axiom symbol is
    // collected through its axiom.
    em.assign_names();

    std::ostringstream os;
    os << "% Strong-equivalence problem: the conjecture holds only if the two\n";
    os << "% programs' translations are equivalent in the supporting theory.\n";
    em.declarations(os);
    os << "% sort encoding\n";
    em.bridge_axioms(os);
    std::string role;
    for (const NamedAxiom& ax : p.axioms) {
        if (ax.role != role) {
            role = ax.role;
            os << "% " << role << "\n";
        }
        os << "tff(" << ax.name << ", axiom, " << em.formula(ax.formula) << ").\n";
    }
    os << "% conjecture\n";
    os << "tff(con, conjecture, " << em.formula(p.conjecture) << ").\n";
    return os.str();
}

std::string emit_sentences(const std::vector<std::pair<std::string, FormulaPtr>>& named,
                           const FamilyRegistry* registry) {
    Emitter em(registry);
    for (const auto& [name, f] : named) em.collect(f);
    em.assign_names();
    std::ostringstream os;
    em.declarations(os);
    em.bridge_axioms(os);
    for (const auto& [name, f] : named)
        os << "tff(" << name << ", axiom, " << em.formula(f) << ").\n";
    return os.str();
}

}  // namespace mgc
