#include "mgc/fol.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "mgc/family.hpp"

namespace mgc {

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

Sort FoTerm::sort() const {
    switch (kind) {
        case Kind::Constant:
            return constant.is_numeral() ? Sort::Integer : Sort::General;
        case Kind::Variable:
            return var_sort;
        case Kind::Abs:
        case Kind::BinOp:
            return Sort::Integer;
    }
    return Sort::General;
}

FoTermPtr FoTerm::constant_term(PrecomputedTerm c) {
    auto t = std::make_shared<FoTerm>();
    t->kind = Kind::Constant;
    t->constant = std::move(c);
    return t;
}

FoTermPtr FoTerm::variable(std::string name, Sort sort) {
    auto t = std::make_shared<FoTerm>();
    t->kind = Kind::Variable;
    t->var = std::move(name);
    t->var_sort = sort;
    return t;
}

FoTermPtr FoTerm::abs(FoTermPtr inner) {
    if (inner->sort() != Sort::Integer)
        throw std::invalid_argument("|.| requires an integer-sorted argument");
    auto t = std::make_shared<FoTerm>();
    t->kind = Kind::Abs;
    t->lhs = std::move(inner);
    return t;
}

FoTermPtr FoTerm::binop(FoOp op, FoTermPtr l, FoTermPtr r) {
    if (l->sort() != Sort::Integer || r->sort() != Sort::Integer)
        throw std::invalid_argument("arithmetic requires integer-sorted arguments");
    auto t = std::make_shared<FoTerm>();
    t->kind = Kind::BinOp;
    t->op = op;
    t->lhs = std::move(l);
    t->rhs = std::move(r);
    return t;
}

bool equal(const FoTermPtr& a, const FoTermPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case FoTerm::Kind::Constant:
            return a->constant == b->constant;
        case FoTerm::Kind::Variable:
            return a->var == b->var && a->var_sort == b->var_sort;
        case FoTerm::Kind::Abs:
            return equal(a->lhs, b->lhs);
        case FoTerm::Kind::BinOp:
            return a->op == b->op && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

void collect_vars(const FoTermPtr& t, std::set<std::string>& out) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            return;
        case FoTerm::Kind::Variable:
            out.insert(t->var);
            return;
        case FoTerm::Kind::Abs:
            collect_vars(t->lhs, out);
            return;
        case FoTerm::Kind::BinOp:
            collect_vars(t->lhs, out);
            collect_vars(t->rhs, out);
            return;
    }
}

// ---------------------------------------------------------------------------
// Formula builders
// ---------------------------------------------------------------------------

namespace {

FormulaPtr node(Formula f) { return std::make_shared<Formula>(std::move(f)); }

}  // namespace

FormulaPtr mk_atom(PredRef pred, std::vector<FoTermPtr> args) {
    if (static_cast<int>(args.size()) != pred.arity)
        throw std::invalid_argument("atom arity mismatch for " + pred.name);
    if (pred.kind == PredKind::Start) {
        if (args.empty() || args.back()->sort() != Sort::Integer)
            throw std::invalid_argument("Start's last argument must be integer-sorted");
    }
    Formula f;
    f.kind = Formula::Kind::Atom;
    f.pred = std::move(pred);
    f.args = std::move(args);
    return node(std::move(f));
}

FormulaPtr mk_cmp(FoTermPtr l, CmpRel rel, FoTermPtr r) {
    Formula f;
    f.kind = Formula::Kind::Cmp;
    f.tlhs = std::move(l);
    f.trhs = std::move(r);
    f.rel = rel;
    return node(std::move(f));
}

FormulaPtr mk_true() {
    Formula f;
    f.kind = Formula::Kind::True;
    return node(std::move(f));
}

FormulaPtr mk_false() {
    Formula f;
    f.kind = Formula::Kind::False;
    return node(std::move(f));
}

FormulaPtr mk_not(FormulaPtr g) {
    Formula f;
    f.kind = Formula::Kind::Not;
    f.a = std::move(g);
    return node(std::move(f));
}

namespace {

FormulaPtr binary(Formula::Kind k, FormulaPtr l, FormulaPtr r) {
    Formula f;
    f.kind = k;
    f.a = std::move(l);
    f.b = std::move(r);
    return node(std::move(f));
}

}  // namespace

FormulaPtr mk_and(FormulaPtr l, FormulaPtr r) { return binary(Formula::Kind::And, std::move(l), std::move(r)); }
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r) { return binary(Formula::Kind::Or, std::move(l), std::move(r)); }
FormulaPtr mk_implies(FormulaPtr l, FormulaPtr r) { return binary(Formula::Kind::Implies, std::move(l), std::move(r)); }
FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r) { return binary(Formula::Kind::Iff, std::move(l), std::move(r)); }

FormulaPtr mk_forall(std::string var, Sort sort, FormulaPtr g) {
    Formula f;
    f.kind = Formula::Kind::Forall;
    f.var = std::move(var);
    f.var_sort = sort;
    f.a = std::move(g);
    return node(std::move(f));
}

FormulaPtr mk_exists(std::string var, Sort sort, FormulaPtr g) {
    Formula f;
    f.kind = Formula::Kind::Exists;
    f.var = std::move(var);
    f.var_sort = sort;
    f.a = std::move(g);
    return node(std::move(f));
}

FormulaPtr mk_and(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return mk_true();
    FormulaPtr out = fs.back();
    for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) out = mk_and(*it, out);
    return out;
}

FormulaPtr mk_or(const std::vector<FormulaPtr>& fs) {
    if (fs.empty()) return mk_false();
    FormulaPtr out = fs.back();
    for (auto it = fs.rbegin() + 1; it != fs.rend(); ++it) out = mk_or(*it, out);
    return out;
}

FormulaPtr mk_forall(const std::vector<std::pair<std::string, Sort>>& vars, FormulaPtr f) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = mk_forall(it->first, it->second, f);
    return f;
}

FormulaPtr mk_exists(const std::vector<std::pair<std::string, Sort>>& vars, FormulaPtr f) {
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) f = mk_exists(it->first, it->second, f);
    return f;
}

bool equal(const FormulaPtr& x, const FormulaPtr& y) {
    if (x == y) return true;
    if (!x || !y || x->kind != y->kind) return false;
    switch (x->kind) {
        case Formula::Kind::Atom:
            if (!(x->pred == y->pred) || x->args.size() != y->args.size()) return false;
            for (std::size_t i = 0; i < x->args.size(); ++i)
                if (!equal(x->args[i], y->args[i])) return false;
            return true;
        case Formula::Kind::Cmp:
            return x->rel == y->rel && equal(x->tlhs, y->tlhs) && equal(x->trhs, y->trhs);
        case Formula::Kind::True:
        case Formula::Kind::False:
            return true;
        case Formula::Kind::Not:
            return equal(x->a, y->a);
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            return equal(x->a, y->a) && equal(x->b, y->b);
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return x->var == y->var && x->var_sort == y->var_sort && equal(x->a, y->a);
    }
    return false;
}

// ---------------------------------------------------------------------------
// Free variables
// ---------------------------------------------------------------------------

namespace {

void term_free_vars(const FoTermPtr& t, const std::set<std::string>& bound,
                    std::map<std::string, Sort>& out) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            return;
        case FoTerm::Kind::Variable:
            if (!bound.count(t->var)) out.emplace(t->var, t->var_sort);
            return;
        case FoTerm::Kind::Abs:
            term_free_vars(t->lhs, bound, out);
            return;
        case FoTerm::Kind::BinOp:
            term_free_vars(t->lhs, bound, out);
            term_free_vars(t->rhs, bound, out);
            return;
    }
}

void formula_free_vars(const FormulaPtr& f, std::set<std::string>& bound,
                       std::map<std::string, Sort>& out) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            for (const auto& t : f->args) term_free_vars(t, bound, out);
            return;
        case Formula::Kind::Cmp:
            term_free_vars(f->tlhs, bound, out);
            term_free_vars(f->trhs, bound, out);
            return;
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Not:
            formula_free_vars(f->a, bound, out);
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            formula_free_vars(f->a, bound, out);
            formula_free_vars(f->b, bound, out);
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            bool added = bound.insert(f->var).second;
            formula_free_vars(f->a, bound, out);
            if (added) bound.erase(f->var);
            return;
        }
    }
}

}  // namespace

std::vector<std::pair<std::string, Sort>> free_vars(const FormulaPtr& f) {
    std::set<std::string> bound;
    std::map<std::string, Sort> out;
    formula_free_vars(f, bound, out);
    return {out.begin(), out.end()};
}

std::set<std::string> free_var_names(const FormulaPtr& f) {
    std::set<std::string> names;
    for (const auto& [n, s] : free_vars(f)) names.insert(n);
    return names;
}

// ---------------------------------------------------------------------------
// Substitution
// ---------------------------------------------------------------------------

FoTermPtr substitute(const FoTermPtr& term, const std::string& var, const FoTermPtr& t) {
    switch (term->kind) {
        case FoTerm::Kind::Constant:
            return term;
        case FoTerm::Kind::Variable:
            if (term->var != var) return term;
            if (term->var_sort == Sort::Integer && t->sort() != Sort::Integer)
                throw std::invalid_argument(
                    "cannot substitute a general term for integer variable " + var);
            return t;
        case FoTerm::Kind::Abs:
            return FoTerm::abs(substitute(term->lhs, var, t));
        case FoTerm::Kind::BinOp:
            return FoTerm::binop(term->op, substitute(term->lhs, var, t),
                                 substitute(term->rhs, var, t));
    }
    return term;
}

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (int i = 1;; ++i) {
        std::string cand = base + std::to_string(i);
        if (!avoid.count(cand)) return cand;
    }
}

FormulaPtr subst_rec(const FormulaPtr& f, const std::string& var, const FoTermPtr& t,
                     const std::set<std::string>& t_vars) {
    switch (f->kind) {
        case Formula::Kind::Atom: {
            std::vector<FoTermPtr> args;
            args.reserve(f->args.size());
            for (const auto& a : f->args) args.push_back(substitute(a, var, t));
            return mk_atom(f->pred, std::move(args));
        }
        case Formula::Kind::Cmp:
            return mk_cmp(substitute(f->tlhs, var, t), f->rel, substitute(f->trhs, var, t));
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Not:
            return mk_not(subst_rec(f->a, var, t, t_vars));
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            Formula g;
            g.kind = f->kind;
            g.a = subst_rec(f->a, var, t, t_vars);
            g.b = subst_rec(f->b, var, t, t_vars);
            return node(std::move(g));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            if (f->var == var) return f;  // occurrence is bound below
            if (t_vars.count(f->var) && free_var_names(f->a).count(var)) {
                // The binder would capture a variable of t; rename it first.
                std::set<std::string> avoid = t_vars;
                for (const auto& n : free_var_names(f->a)) avoid.insert(n);
                avoid.insert(var);
                std::string renamed = fresh_name(f->var, avoid);
                FormulaPtr body =
                    subst_rec(f->a, f->var, FoTerm::variable(renamed, f->var_sort), {});
                body = subst_rec(body, var, t, t_vars);
                Formula g;
                g.kind = f->kind;
                g.var = renamed;
                g.var_sort = f->var_sort;
                g.a = std::move(body);
                return node(std::move(g));
            }
            Formula g;
            g.kind = f->kind;
            g.var = f->var;
            g.var_sort = f->var_sort;
            g.a = subst_rec(f->a, var, t, t_vars);
            return node(std::move(g));
        }
    }
    return f;
}

}  // namespace

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const FoTermPtr& t) {
    std::set<std::string> t_vars;
    collect_vars(t, t_vars);
    return subst_rec(f, var, t, t_vars);
}

FormulaPtr universal_closure(const FormulaPtr& f) {
    FormulaPtr out = f;
    auto vars = free_vars(f);  // already sorted by name
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
        out = mk_forall(it->first, it->second, out);
    return out;
}

FormulaPtr lex_less(const std::vector<FoTermPtr>& xs, const std::vector<FoTermPtr>& us) {
    if (xs.size() != us.size()) throw std::invalid_argument("lex_less: tuple length mismatch");
    std::vector<FormulaPtr> disjuncts;
    for (std::size_t l = 0; l < xs.size(); ++l) {
        // Strict comparison first, then the equality guard on the prefix.
        std::vector<FormulaPtr> conj;
        conj.push_back(mk_cmp(xs[l], CmpRel::Lt, us[l]));
        for (std::size_t k = 0; k < l; ++k)
            conj.push_back(mk_cmp(xs[k], CmpRel::Eq, us[k]));
        disjuncts.push_back(mk_and(conj));
    }
    return mk_or(disjuncts);
}

// ---------------------------------------------------------------------------
// Priming
// ---------------------------------------------------------------------------

bool contains_primed(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            return f->pred.primed;
        case Formula::Kind::Cmp:
        case Formula::Kind::True:
        case Formula::Kind::False:
            return false;
        case Formula::Kind::Not:
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return contains_primed(f->a);
        default:
            return contains_primed(f->a) || contains_primed(f->b);
    }
}

bool contains_iff(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Cmp:
        case Formula::Kind::True:
        case Formula::Kind::False:
            return false;
        case Formula::Kind::Iff:
            return true;
        case Formula::Kind::Not:
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            return contains_iff(f->a);
        default:
            return contains_iff(f->a) || contains_iff(f->b);
    }
}

namespace {

FormulaPtr prime_rec(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom: {
            if (f->pred.primed) throw std::invalid_argument("formula is already primed");
            PredRef p = f->pred;
            p.primed = true;
            return mk_atom(std::move(p), f->args);
        }
        case Formula::Kind::Cmp:
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Not:
            return mk_not(prime_rec(f->a));
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            Formula g;
            g.kind = f->kind;
            g.a = prime_rec(f->a);
            g.b = prime_rec(f->b);
            return node(std::move(g));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            Formula g;
            g.kind = f->kind;
            g.var = f->var;
            g.var_sort = f->var_sort;
            g.a = prime_rec(f->a);
            return node(std::move(g));
        }
    }
    return f;
}

}  // namespace

FormulaPtr prime(const FormulaPtr& f) { return prime_rec(f); }

FormulaPtr lower_iff(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::Atom:
        case Formula::Kind::Cmp:
        case Formula::Kind::True:
        case Formula::Kind::False:
            return f;
        case Formula::Kind::Not:
            return mk_not(lower_iff(f->a));
        case Formula::Kind::Iff: {
            FormulaPtr a = lower_iff(f->a);
            FormulaPtr b = lower_iff(f->b);
            return mk_and(mk_implies(a, b), mk_implies(b, a));
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies: {
            Formula g;
            g.kind = f->kind;
            g.a = lower_iff(f->a);
            g.b = lower_iff(f->b);
            return node(std::move(g));
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            Formula g;
            g.kind = f->kind;
            g.var = f->var;
            g.var_sort = f->var_sort;
            g.a = lower_iff(f->a);
            return node(std::move(g));
        }
    }
    return f;
}

void collect_preds(const FormulaPtr& f, std::set<PredRef>& out) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            out.insert(f->pred);
            return;
        case Formula::Kind::Cmp:
        case Formula::Kind::True:
        case Formula::Kind::False:
            return;
        case Formula::Kind::Not:
        case Formula::Kind::Forall:
        case Formula::Kind::Exists:
            collect_preds(f->a, out);
            return;
        default:
            collect_preds(f->a, out);
            collect_preds(f->b, out);
            return;
    }
}

// ---------------------------------------------------------------------------
// Canonical serialization / alpha-equivalence
// ---------------------------------------------------------------------------

namespace {

struct CanonCtx {
    std::map<std::string, std::string> renames;  // var -> canonical name
    int next_bound = 0;
};

void canon_term(const FoTermPtr& t, CanonCtx& ctx, std::ostream& os) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            os << "c(" << static_cast<int>(t->constant.kind) << ',' << t->constant.str() << ')';
            return;
        case FoTerm::Kind::Variable: {
            auto it = ctx.renames.find(t->var);
            os << 'v' << (t->var_sort == Sort::Integer ? 'i' : 'g') << '(';
            if (it != ctx.renames.end())
                os << it->second;
            else
                os << '!' << t->var;  // free variable outside the role set
            os << ')';
            return;
        }
        case FoTerm::Kind::Abs:
            os << "abs(";
            canon_term(t->lhs, ctx, os);
            os << ')';
            return;
        case FoTerm::Kind::BinOp:
            os << "op" << static_cast<int>(t->op) << '(';
            canon_term(t->lhs, ctx, os);
            os << ',';
            canon_term(t->rhs, ctx, os);
            os << ')';
            return;
    }
}

void canon_formula(const FormulaPtr& f, CanonCtx& ctx, std::ostream& os) {
    switch (f->kind) {
        case Formula::Kind::Atom:
            os << "atom(" << static_cast<int>(f->pred.kind) << ',' << f->pred.name << '/'
               << f->pred.arity << ',' << f->pred.family << ',' << f->pred.primed;
            for (const auto& a : f->args) {
                os << ',';
                canon_term(a, ctx, os);
            }
            os << ')';
            return;
        case Formula::Kind::Cmp:
            os << "cmp" << static_cast<int>(f->rel) << '(';
            canon_term(f->tlhs, ctx, os);
            os << ',';
            canon_term(f->trhs, ctx, os);
            os << ')';
            return;
        case Formula::Kind::True:
            os << "T";
            return;
        case Formula::Kind::False:
            os << "F";
            return;
        case Formula::Kind::Not:
            os << "not(";
            canon_formula(f->a, ctx, os);
            os << ')';
            return;
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff:
            os << "bin" << static_cast<int>(f->kind) << '(';
            canon_formula(f->a, ctx, os);
            os << ',';
            canon_formula(f->b, ctx, os);
            os << ')';
            return;
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            std::string name = "b" + std::to_string(ctx.next_bound++);
            os << (f->kind == Formula::Kind::Forall ? "all" : "ex")
               << (f->var_sort == Sort::Integer ? 'i' : 'g') << '(' << name << ',';
            auto it = ctx.renames.find(f->var);
            std::string saved;
            bool had = it != ctx.renames.end();
            if (had) saved = it->second;
            ctx.renames[f->var] = name;
            canon_formula(f->a, ctx, os);
            if (had)
                ctx.renames[f->var] = saved;
            else
                ctx.renames.erase(f->var);
            os << ')';
            return;
        }
    }
}

}  // namespace

std::string canonical_key(const FormulaPtr& f, const std::vector<std::string>& role_vars) {
    CanonCtx ctx;
    for (std::size_t i = 0; i < role_vars.size(); ++i)
        ctx.renames[role_vars[i]] = "r" + std::to_string(i);
    std::ostringstream os;
    canon_formula(f, ctx, os);
    return os.str();
}

bool alpha_equal(const FormulaPtr& a, const FormulaPtr& b) {
    auto fa = free_var_names(a);
    auto fb = free_var_names(b);
    if (fa != fb) return false;
    std::vector<std::string> roles(fa.begin(), fa.end());
    return canonical_key(a, roles) == canonical_key(b, roles);
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

namespace {

struct Sym {
    const char* land;
    const char* lor;
    const char* lnot;
    const char* impl;
    const char* iff;
    const char* top;
    const char* bot;
    const char* forall;
    const char* exists;
    const char* neq;
    const char* leq;
    const char* geq;
};

const Sym kUnicode{" ∧ ", " ∨ ", "¬", " → ", " ↔ ",
                   "⊤", "⊥", "∀", "∃", "≠", "≤", "≥"};
const Sym kAscii{" and ", " or ", "not ", " -> ", " <-> ",
                 "#true", "#false", "forall ", "exists ", "!=", "<=", ">="};

const char* rel_str(CmpRel r, const Sym& sym) {
    switch (r) {
        case CmpRel::Eq: return "=";
        case CmpRel::Ne: return sym.neq;
        case CmpRel::Lt: return "<";
        case CmpRel::Gt: return ">";
        case CmpRel::Le: return sym.leq;
        case CmpRel::Ge: return sym.geq;
    }
    return "?";
}

int fo_prec(FoOp op) { return op == FoOp::Mul ? 2 : 1; }

void print_fo_term(std::ostream& os, const FoTermPtr& t, int parent_prec) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            os << t->constant.str();
            return;
        case FoTerm::Kind::Variable:
            os << t->var;
            return;
        case FoTerm::Kind::Abs:
            os << '|';
            print_fo_term(os, t->lhs, 0);
            os << '|';
            return;
        case FoTerm::Kind::BinOp: {
            int prec = fo_prec(t->op);
            bool paren = prec < parent_prec;
            if (paren) os << '(';
            print_fo_term(os, t->lhs, prec);
            os << (t->op == FoOp::Add ? " + " : t->op == FoOp::Sub ? " - " : " * ");
            print_fo_term(os, t->rhs, prec + 1);
            if (paren) os << ')';
            return;
        }
    }
}

// Precedence: iff(1) < implies(2) < or(3) < and(4) < not/quant(5).
int prec_of(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::Iff: return 1;
        case Formula::Kind::Implies: return 2;
        case Formula::Kind::Or: return 3;
        case Formula::Kind::And: return 4;
        default: return 6;
    }
}

void print_pred(std::ostream& os, const PredRef& p, const PrintStyle& style);

void print_formula(std::ostream& os, const FormulaPtr& f, const PrintStyle& style,
                   int parent_prec) {
    const Sym& sym = style.unicode ? kUnicode : kAscii;
    switch (f->kind) {
        case Formula::Kind::Atom: {
            print_pred(os, f->pred, style);
            if (!f->args.empty()) {
                os << '(';
                for (std::size_t i = 0; i < f->args.size(); ++i) {
                    if (i) os << ", ";
                    print_fo_term(os, f->args[i], 0);
                }
                os << ')';
            }
            return;
        }
        case Formula::Kind::Cmp:
            print_fo_term(os, f->tlhs, 0);
            os << ' ' << rel_str(f->rel, sym) << ' ';
            print_fo_term(os, f->trhs, 0);
            return;
        case Formula::Kind::True:
            os << sym.top;
            return;
        case Formula::Kind::False:
            os << sym.bot;
            return;
        case Formula::Kind::Not: {
            os << sym.lnot;
            bool paren = prec_of(f->a->kind) < 5 && f->a->kind != Formula::Kind::Not;
            if (paren) os << '(';
            print_formula(os, f->a, style, 5);
            if (paren) os << ')';
            return;
        }
        case Formula::Kind::And:
        case Formula::Kind::Or:
        case Formula::Kind::Implies:
        case Formula::Kind::Iff: {
            int prec = prec_of(f->kind);
            bool paren = prec < parent_prec ||
                         (parent_prec == prec && f->kind == Formula::Kind::Implies);
            if (paren) os << '(';
            const char* opstr = f->kind == Formula::Kind::And   ? sym.land
                                : f->kind == Formula::Kind::Or  ? sym.lor
                                : f->kind == Formula::Kind::Implies ? sym.impl
                                                                     : sym.iff;
            // Right-associated chains print flat.
            print_formula(os, f->a, style, prec + 1);
            os << opstr;
            print_formula(os, f->b, style, prec);
            if (paren) os << ')';
            return;
        }
        case Formula::Kind::Forall:
        case Formula::Kind::Exists: {
            os << (f->kind == Formula::Kind::Forall ? sym.forall : sym.exists);
            if (style.unicode) {
                // Group consecutive same-kind quantifiers: "forall X Y Z (...)".
                os << f->var;
            } else {
                os << f->var;
            }
            FormulaPtr body = f->a;
            while (body->kind == f->kind) {
                os << ' ' << body->var;
                body = body->a;
            }
            os << ' ';
            os << '(';
            print_formula(os, body, style, 0);
            os << ')';
            return;
        }
    }
}

void print_pred(std::ostream& os, const PredRef& p, const PrintStyle& style) {
    switch (p.kind) {
        case PredKind::Plain:
            os << p.name;
            break;
        case PredKind::Atleast:
        case PredKind::Atmost:
        case PredKind::Start: {
            const char* base = p.kind == PredKind::Atleast ? "Atleast"
                               : p.kind == PredKind::Atmost ? "Atmost"
                                                            : "Start";
            if (style.inline_families && style.registry) {
                const PredicateFamily& fam = style.registry->family(p.family);
                os << base << "^{";
                for (std::size_t i = 0; i < fam.x_vars.size(); ++i) {
                    if (i) os << ',';
                    os << fam.x_vars[i];
                }
                os << ';';
                for (std::size_t i = 0; i < fam.v_vars.size(); ++i) {
                    if (i) os << ',';
                    os << fam.v_vars[i];
                }
                os << "}_{" << to_string(fam.body, PrintStyle{style.unicode, false, nullptr})
                   << '}';
            } else if (style.registry) {
                os << family_name(p.kind, *style.registry, p.family);
            } else {
                std::string b = base;
                for (auto& c : b) c = static_cast<char>(std::tolower(c));
                os << b << "#" << p.family;
            }
            break;
        }
    }
    if (p.primed) os << '\'';
}

}  // namespace

std::string to_string(const FoTermPtr& t) {
    std::ostringstream os;
    print_fo_term(os, t, 0);
    return os.str();
}

std::string to_string(const FormulaPtr& f, const PrintStyle& style) {
    std::ostringstream os;
    print_formula(os, f, style, 0);
    return os.str();
}

}  // namespace mgc
