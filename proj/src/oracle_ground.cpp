#include <algorithm>
#include <functional>
#include <sstream>
#include <tuple>

#include "mgc/axioms.hpp"
#include "mgc/oracle.hpp"

namespace mgc {

// ---------------------------------------------------------------------------
// Universe
// ---------------------------------------------------------------------------

Universe Universe::from_terms(std::vector<PrecomputedTerm> terms) {
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    Universe u;
    u.terms = std::move(terms);
    bool any = false;
    for (const auto& t : u.terms) {
        if (!t.is_numeral()) continue;
        if (!any) {
            u.window_lo = u.window_hi = t.value;
            any = true;
        } else {
            u.window_lo = std::min(u.window_lo, t.value);
            u.window_hi = std::max(u.window_hi, t.value);
        }
    }
    if (!any) {
        u.window_lo = 0;
        u.window_hi = -1;
    } else {
        std::int64_t count = 0;
        for (const auto& t : u.terms)
            if (t.is_numeral()) ++count;
        if (count != u.window_hi - u.window_lo + 1)
            throw std::invalid_argument("universe numerals must be contiguous");
    }
    return u;
}

Universe Universe::default_for(const Program& p1, const Program& p2) {
    std::vector<PrecomputedTerm> terms;
    std::set<std::string> constants = collect_constants(p1);
    for (const auto& c : collect_constants(p2)) constants.insert(c);
    for (const auto& c : constants) terms.push_back(PrecomputedTerm::symbolic(c));

    // Numerals mentioned by either program widen the default window.
    std::int64_t lo = -2;
    std::int64_t hi = std::max<std::int64_t>(3, static_cast<std::int64_t>(constants.size()) + 2);
    std::function<void(const MgcTermPtr&)> scan_term = [&](const MgcTermPtr& t) {
        switch (t->kind) {
            case MgcTerm::Kind::Precomputed:
                if (t->constant.is_numeral()) {
                    lo = std::min(lo, t->constant.value);
                    hi = std::max(hi, t->constant.value);
                }
                return;
            case MgcTerm::Kind::Variable:
                return;
            case MgcTerm::Kind::Abs:
                scan_term(t->lhs);
                return;
            case MgcTerm::Kind::BinOp:
                scan_term(t->lhs);
                scan_term(t->rhs);
                return;
        }
    };
    auto scan_program = [&](const Program& p) {
        for (const Rule& r : p.rules) {
            for (const auto& a : r.head.args) scan_term(a);
            for (const BodyElement& e : r.body) {
                switch (e.kind) {
                    case BodyElement::Kind::Literal:
                        for (const auto& a : e.lit.atom.args) scan_term(a);
                        break;
                    case BodyElement::Kind::Comparison:
                        scan_term(e.cmp.lhs);
                        scan_term(e.cmp.rhs);
                        break;
                    case BodyElement::Kind::Aggregate:
                        scan_term(e.agg.bound);
                        for (const Conjunct& c : e.agg.element.condition) {
                            if (c.kind == Conjunct::Kind::Literal) {
                                for (const auto& a : c.lit.atom.args) scan_term(a);
                            } else {
                                scan_term(c.cmp.lhs);
                                scan_term(c.cmp.rhs);
                            }
                        }
                        break;
                }
            }
        }
    };
    scan_program(p1);
    scan_program(p2);

    for (std::int64_t n = lo; n <= hi; ++n) terms.push_back(PrecomputedTerm::numeral(n));
    return from_terms(std::move(terms));
}

bool Universe::contains(const PrecomputedTerm& t) const {
    return std::binary_search(terms.begin(), terms.end(), t);
}

std::string Universe::str() const {
    std::ostringstream os;
    os << '{';
    bool first = true;
    bool in_run = false;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const auto& t = terms[i];
        if (t.is_numeral() && !in_run) {
            if (!first) os << ',';
            os << window_lo << ".." << window_hi;
            first = false;
            in_run = true;
        } else if (!t.is_numeral()) {
            if (!first) os << ',';
            os << t.str();
            first = false;
        }
    }
    os << '}';
    return os.str();
}

Universe parse_universe(const std::string& text) {
    std::vector<PrecomputedTerm> terms;
    std::size_t pos = 0;
    auto fail = [&]() { throw std::invalid_argument("bad universe description: " + text); };
    auto parse_int = [&]() -> std::int64_t {
        bool neg = false;
        if (pos < text.size() && text[pos] == '-') {
            neg = true;
            ++pos;
        }
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) fail();
        std::int64_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            v = v * 10 + (text[pos] - '0');
            ++pos;
        }
        return neg ? -v : v;
    };
    while (pos < text.size()) {
        if (text[pos] == ',') {
            ++pos;
            continue;
        }
        if (text[pos] == '-' || std::isdigit(static_cast<unsigned char>(text[pos]))) {
            std::int64_t a = parse_int();
            if (pos + 1 < text.size() && text[pos] == '.' && text[pos + 1] == '.') {
                pos += 2;
                std::int64_t b = parse_int();
                if (b < a) fail();
                for (std::int64_t n = a; n <= b; ++n) terms.push_back(PrecomputedTerm::numeral(n));
            } else {
                terms.push_back(PrecomputedTerm::numeral(a));
            }
        } else if (std::isalpha(static_cast<unsigned char>(text[pos]))) {
            std::string name;
            while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                         text[pos] == '_')) {
                name += text[pos];
                ++pos;
            }
            terms.push_back(PrecomputedTerm::symbolic(name));
        } else {
            fail();
        }
    }
    if (terms.empty()) fail();
    return Universe::from_terms(std::move(terms));
}

// ---------------------------------------------------------------------------
// Atom table
// ---------------------------------------------------------------------------

namespace {

std::string atom_key(const std::string& pred, const std::vector<PrecomputedTerm>& args) {
    std::string key = pred + "/" + std::to_string(args.size());
    for (const auto& a : args) {
        key += '|';
        key += a.is_numeral() ? "n" + std::to_string(a.value) : "s" + a.name;
    }
    return key;
}

}  // namespace

int AtomTable::lookup(const std::string& pred, const std::vector<PrecomputedTerm>& args) const {
    auto it = index_.find(atom_key(pred, args));
    return it == index_.end() ? -1 : it->second;
}

AtomTable AtomTable::build(const std::vector<PredRef>& plain_preds, const Universe& u) {
    AtomTable table;
    std::vector<std::pair<std::string, int>> preds;
    for (const PredRef& p : plain_preds) {
        if (p.kind != PredKind::Plain) continue;
        preds.emplace_back(p.name, p.arity);
    }
    std::sort(preds.begin(), preds.end());
    preds.erase(std::unique(preds.begin(), preds.end()), preds.end());

    for (const auto& [name, arity] : preds) {
        table.preds.push_back(Pred{name, arity});
        std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
        for (;;) {
            std::vector<PrecomputedTerm> args;
            args.reserve(idx.size());
            for (std::size_t i : idx) args.push_back(u.terms[i]);
            int id = static_cast<int>(table.names.size());
            std::string rendered = name;
            if (!args.empty()) {
                rendered += '(';
                for (std::size_t i = 0; i < args.size(); ++i) {
                    if (i) rendered += ',';
                    rendered += args[i].str();
                }
                rendered += ')';
            }
            table.names.push_back(rendered);
            table.index_[atom_key(name, args)] = id;

            // Next tuple in lexicographic order.
            int pos = arity - 1;
            while (pos >= 0) {
                if (++idx[static_cast<std::size_t>(pos)] < u.terms.size()) break;
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0 || arity == 0) break;
        }
        if (table.names.size() > 64)
            throw std::invalid_argument(
                "universe induces more than 64 ground atoms; shrink it for the oracle");
    }
    return table;
}

// ---------------------------------------------------------------------------
// sigma_0 ground evaluation
// ---------------------------------------------------------------------------

namespace {

using Env = std::map<std::string, PrecomputedTerm>;

PrecomputedTerm eval_term_env(const FoTermPtr& t, const Env& env) {
    switch (t->kind) {
        case FoTerm::Kind::Constant:
            return t->constant;
        case FoTerm::Kind::Variable: {
            auto it = env.find(t->var);
            if (it == env.end()) throw std::logic_error("unbound variable " + t->var);
            return it->second;
        }
        case FoTerm::Kind::Abs: {
            PrecomputedTerm v = eval_term_env(t->lhs, env);
            if (!v.is_numeral()) throw std::logic_error("|.| applied to a non-numeral");
            return PrecomputedTerm::numeral(v.value < 0 ? -v.value : v.value);
        }
        case FoTerm::Kind::BinOp: {
            PrecomputedTerm a = eval_term_env(t->lhs, env);
            PrecomputedTerm b = eval_term_env(t->rhs, env);
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
    throw std::logic_error("unreachable term evaluation");
}

}  // namespace

PrecomputedTerm eval_ground_term(const FoTermPtr& t) {
    Env empty;
    return eval_term_env(t, empty);
}

bool eval_ground_cmp(const PrecomputedTerm& a, CmpRel rel, const PrecomputedTerm& b) {
    switch (rel) {
        case CmpRel::Eq: return a == b;
        case CmpRel::Ne: return a != b;
        case CmpRel::Lt: return a < b;
        case CmpRel::Gt: return a > b;
        case CmpRel::Le: return a <= b;
        case CmpRel::Ge: return a >= b;
    }
    return false;
}

// ---------------------------------------------------------------------------
// DAG with hash consing and constant folding
// ---------------------------------------------------------------------------

int Dag::add(Node n) {
    std::string key;
    key.reserve(32);
    key += static_cast<char>('A' + static_cast<int>(n.op));
    key += std::to_string(n.a);
    key += ',';
    key += std::to_string(n.b);
    key += ',';
    key += std::to_string(n.atom);
    key += ',';
    key += std::to_string(n.bound);
    for (int k : n.kids) {
        key += ';';
        key += std::to_string(k);
    }
    auto it = cons_.find(key);
    if (it != cons_.end()) return it->second;
    int id = static_cast<int>(nodes.size());
    nodes.push_back(std::move(n));
    cons_.emplace(std::move(key), id);
    return id;
}

int Dag::false_node() {
    Node n;
    n.op = Op::False;
    return add(std::move(n));
}
int Dag::true_node() {
    Node n;
    n.op = Op::True;
    return add(std::move(n));
}

namespace {

struct Domains {
    std::vector<PrecomputedTerm> general;
    std::vector<std::int64_t> integers;
};

Domains make_domains(const Universe& u, int margin) {
    Domains d;
    std::int64_t lo = u.window_lo;
    std::int64_t hi = u.window_hi;
    if (lo > hi) {
        // No numerals in the universe; the margin still supplies a window
        // so integer quantifiers are not vacuous.
        lo = 0;
        hi = -1;
    }
    std::int64_t ext_lo = lo - margin;
    std::int64_t ext_hi = hi + margin;
    for (std::int64_t n = ext_lo; n <= ext_hi; ++n) d.integers.push_back(n);

    std::vector<PrecomputedTerm> gen = u.terms;
    for (std::int64_t n = ext_lo; n <= ext_hi; ++n) {
        if (n >= lo && n <= hi) continue;  // already in the universe
        gen.push_back(PrecomputedTerm::numeral(n));
    }
    std::sort(gen.begin(), gen.end());
    gen.erase(std::unique(gen.begin(), gen.end()), gen.end());
    d.general = std::move(gen);
    return d;
}

class Grounder {
  public:
    Grounder(Dag& dag, const Universe& u, const AtomTable& atoms, const FamilyRegistry* reg,
             const GroundOptions& opts)
        : dag_(dag), universe_(u), atoms_(atoms), registry_(reg),
          domains_(make_domains(u, opts.margin)) {}

    int ground_sentence(const FormulaPtr& f) {
        Env env;
        FormulaPtr lowered = lower_iff(f);
        if (!free_vars(lowered).empty())
            throw std::invalid_argument("ground expects a sentence without free variables");
        return go(lowered, env);
    }

  private:
    int mk_not(int a) {
        if (is(a, Dag::Op::False)) return dag_.true_node();
        if (is(a, Dag::Op::True)) return dag_.false_node();
        Dag::Node n;
        n.op = Dag::Op::Not;
        n.a = a;
        return dag_.add(std::move(n));
    }

    int mk_and(std::vector<int> kids) {
        std::vector<int> live;
        for (int k : kids) {
            if (is(k, Dag::Op::True)) continue;
            if (is(k, Dag::Op::False)) return dag_.false_node();
            live.push_back(k);
        }
        if (live.empty()) return dag_.true_node();
        if (live.size() == 1) return live[0];
        Dag::Node n;
        n.op = Dag::Op::And;
        n.kids = std::move(live);
        return dag_.add(std::move(n));
    }

    int mk_or(std::vector<int> kids) {
        std::vector<int> live;
        for (int k : kids) {
            if (is(k, Dag::Op::False)) continue;
            if (is(k, Dag::Op::True)) return dag_.true_node();
            live.push_back(k);
        }
        if (live.empty()) return dag_.false_node();
        if (live.size() == 1) return live[0];
        Dag::Node n;
        n.op = Dag::Op::Or;
        n.kids = std::move(live);
        return dag_.add(std::move(n));
    }

    int mk_impl(int a, int b) {
        if (is(a, Dag::Op::False) || is(b, Dag::Op::True)) return dag_.true_node();
        if (is(a, Dag::Op::True)) return b;
        if (is(b, Dag::Op::False)) return mk_not(a);
        Dag::Node n;
        n.op = Dag::Op::Impl;
        n.a = a;
        n.b = b;
        return dag_.add(std::move(n));
    }

    bool is(int id, Dag::Op op) const { return dag_.nodes[static_cast<std::size_t>(id)].op == op; }

    void warn(const std::string& msg) {
        if (warned_.insert(msg).second) dag_.warnings.push_back(msg);
    }

    // Value of a ground term, or nullopt when it mentions an unbound
    // variable (used for binding-guided quantifier expansion).
    std::optional<PrecomputedTerm> try_eval(const FoTermPtr& t, const Env& env) {
        switch (t->kind) {
            case FoTerm::Kind::Constant:
                return t->constant;
            case FoTerm::Kind::Variable: {
                auto it = env.find(t->var);
                if (it == env.end()) return std::nullopt;
                return it->second;
            }
            case FoTerm::Kind::Abs: {
                auto v = try_eval(t->lhs, env);
                if (!v) return std::nullopt;
                return PrecomputedTerm::numeral(v->value < 0 ? -v->value : v->value);
            }
            case FoTerm::Kind::BinOp: {
                auto a = try_eval(t->lhs, env);
                auto b = try_eval(t->rhs, env);
                if (!a || !b) return std::nullopt;
                switch (t->op) {
                    case FoOp::Add: return PrecomputedTerm::numeral(checked_add(a->value, b->value));
                    case FoOp::Sub: return PrecomputedTerm::numeral(checked_sub(a->value, b->value));
                    case FoOp::Mul: return PrecomputedTerm::numeral(checked_mul(a->value, b->value));
                }
            }
        }
        return std::nullopt;
    }

    static void flatten_conj(const FormulaPtr& f, std::vector<const Formula*>& out) {
        if (f->kind == Formula::Kind::And) {
            flatten_conj(f->a, out);
            flatten_conj(f->b, out);
        } else {
            out.push_back(f.get());
        }
    }

    // Searches the quantifier body for an equality that pins the variable:
    // below any quantifier prefix, either among the body's conjuncts or
    // among the antecedent conjuncts of an implication. Expanding such a
    // quantifier over the domain would fold every other branch away, so the
    // value is computed directly.
    std::optional<PrecomputedTerm> pinned_value(const FormulaPtr& quantified, Env& env) {
        const Formula* body = quantified->a.get();
        while (body->kind == Formula::Kind::Forall || body->kind == Formula::Kind::Exists) {
            if (body->var == quantified->var) return std::nullopt;  // shadowed below
            body = body->a.get();
        }
        std::vector<const Formula*> conj;
        if (body->kind == Formula::Kind::Implies) {
            flatten_conj(body->a, conj);
        } else if (quantified->kind == Formula::Kind::Exists) {
            std::vector<const Formula*> stack{body};
            while (!stack.empty()) {
                const Formula* g = stack.back();
                stack.pop_back();
                if (g->kind == Formula::Kind::And) {
                    stack.push_back(g->a.get());
                    stack.push_back(g->b.get());
                } else {
                    conj.push_back(g);
                }
            }
        }
        for (const Formula* c : conj) {
            if (c->kind != Formula::Kind::Cmp || c->rel != CmpRel::Eq) continue;
            for (int side = 0; side < 2; ++side) {
                const FoTermPtr& var_side = side == 0 ? c->tlhs : c->trhs;
                const FoTermPtr& val_side = side == 0 ? c->trhs : c->tlhs;
                if (var_side->kind != FoTerm::Kind::Variable || var_side->var != quantified->var)
                    continue;
                if (env.count(quantified->var)) continue;
                auto v = try_eval(val_side, env);
                if (v) return v;
            }
        }
        return std::nullopt;
    }

    bool in_domain(const PrecomputedTerm& v, Sort sort) const {
        if (sort == Sort::Integer) {
            if (!v.is_numeral()) return false;
            return !domains_.integers.empty() && v.value >= domains_.integers.front() &&
                   v.value <= domains_.integers.back();
        }
        return std::binary_search(domains_.general.begin(), domains_.general.end(), v);
    }

    int go(const FormulaPtr& f, Env& env) {
        switch (f->kind) {
            case Formula::Kind::True:
                return dag_.true_node();
            case Formula::Kind::False:
                return dag_.false_node();
            case Formula::Kind::Cmp: {
                PrecomputedTerm a = eval_term_env(f->tlhs, env);
                PrecomputedTerm b = eval_term_env(f->trhs, env);
                return eval_ground_cmp(a, f->rel, b) ? dag_.true_node() : dag_.false_node();
            }
            case Formula::Kind::Atom:
                return ground_atom(f, env);
            case Formula::Kind::Not:
                return mk_not(go(f->a, env));
            case Formula::Kind::And: {
                int a = go(f->a, env);
                if (is(a, Dag::Op::False)) return a;
                return mk_and({a, go(f->b, env)});
            }
            case Formula::Kind::Or: {
                int a = go(f->a, env);
                if (is(a, Dag::Op::True)) return a;
                return mk_or({a, go(f->b, env)});
            }
            case Formula::Kind::Implies: {
                int a = go(f->a, env);
                if (is(a, Dag::Op::False)) return dag_.true_node();
                return mk_impl(a, go(f->b, env));
            }
            case Formula::Kind::Iff:
                throw std::logic_error("iff must be lowered before grounding");
            case Formula::Kind::Forall:
            case Formula::Kind::Exists: {
                bool forall = f->kind == Formula::Kind::Forall;
                auto saved = env.find(f->var) != env.end()
                                 ? std::optional<PrecomputedTerm>(env[f->var])
                                 : std::nullopt;
                auto restore = [&]() {
                    if (saved)
                        env[f->var] = *saved;
                    else
                        env.erase(f->var);
                };

                if (auto pinned = pinned_value(f, env)) {
                    // Every other branch folds away (false conjunct or true
                    // implication); out-of-domain values leave no branch.
                    if (!in_domain(*pinned, f->var_sort)) {
                        restore();
                        return forall ? dag_.true_node() : dag_.false_node();
                    }
                    env[f->var] = *pinned;
                    int node = go(f->a, env);
                    restore();
                    return node;
                }

                std::vector<int> kids;
                bool decided = false;
                auto visit = [&](const PrecomputedTerm& value) {
                    if (decided) return;
                    env[f->var] = value;
                    int k = go(f->a, env);
                    if (forall && is(k, Dag::Op::False)) decided = true;
                    if (!forall && is(k, Dag::Op::True)) decided = true;
                    kids.push_back(k);
                };
                if (f->var_sort == Sort::Integer) {
                    for (std::int64_t n : domains_.integers) visit(PrecomputedTerm::numeral(n));
                } else {
                    for (const PrecomputedTerm& t : domains_.general) visit(t);
                }
                restore();
                return forall ? mk_and(std::move(kids)) : mk_or(std::move(kids));
            }
        }
        throw std::logic_error("unreachable formula kind");
    }

    int ground_atom(const FormulaPtr& f, Env& env) {
        if (f->pred.primed)
            throw std::invalid_argument("ground expects unprimed formulas");
        if (f->pred.kind == PredKind::Plain) {
            std::vector<PrecomputedTerm> args;
            args.reserve(f->args.size());
            for (const auto& a : f->args) args.push_back(eval_term_env(a, env));
            int id = atoms_.lookup(f->pred.name, args);
            if (id < 0) {
                warn("atoms of " + f->pred.name + "/" + std::to_string(f->args.size()) +
                     " with arguments outside the universe were treated as false");
                return dag_.false_node();
            }
            Dag::Node n;
            n.op = Dag::Op::Atom;
            n.atom = id;
            return dag_.add(std::move(n));
        }

        if (!registry_) throw std::logic_error("family atom without a registry");
        const PredicateFamily& fam = registry_->family(f->pred.family);
        std::size_t nx = fam.x_vars.size();
        std::size_t nv = fam.v_vars.size();

        if (f->pred.kind == PredKind::Start) {
            std::vector<PrecomputedTerm> xs, vs;
            for (std::size_t i = 0; i < nx; ++i) xs.push_back(eval_term_env(f->args[i], env));
            for (std::size_t i = 0; i < nv; ++i) vs.push_back(eval_term_env(f->args[nx + i], env));
            PrecomputedTerm bound = eval_term_env(f->args[nx + nv], env);
            if (!bound.is_numeral()) throw std::logic_error("Start bound must be a numeral");
            if (bound.value <= 0) return dag_.true_node();
            int guard = ground_family_body(fam, xs, vs);
            auto [list, base, live] = witness_list(f->pred.family, fam, vs, &xs);
            int count = count_geq(bound.value, list, base, live);
            return mk_and({guard, count});
        }

        std::vector<PrecomputedTerm> vs;
        for (std::size_t i = 0; i < nv; ++i) vs.push_back(eval_term_env(f->args[i], env));
        PrecomputedTerm bound = eval_term_env(f->args[nv], env);

        if (f->pred.kind == PredKind::Atleast) {
            if (!bound.is_numeral()) return dag_.false_node();  // above every numeral
            if (bound.value <= 0) return dag_.true_node();
            auto [list, base, live] = witness_list(f->pred.family, fam, vs, nullptr);
            return count_geq(bound.value, list, base, live);
        }
        // Atmost
        if (!bound.is_numeral()) return dag_.true_node();
        if (bound.value < 0) return dag_.false_node();
        auto [list, base, live] = witness_list(f->pred.family, fam, vs, nullptr);
        return count_leq(bound.value, list, base, live);
    }

    int count_geq(std::int64_t n, int list, std::int64_t base, std::int64_t live) {
        std::int64_t eff = n - base;
        if (eff <= 0) return dag_.true_node();
        if (eff > live) return dag_.false_node();
        Dag::Node c;
        c.op = Dag::Op::CountGe;
        c.a = list;
        c.bound = eff;
        return dag_.add(std::move(c));
    }

    int count_leq(std::int64_t n, int list, std::int64_t base, std::int64_t live) {
        std::int64_t eff = n - base;
        if (eff < 0) return dag_.false_node();
        if (eff >= live) return dag_.true_node();
        Dag::Node c;
        c.op = Dag::Op::CountLe;
        c.a = list;
        c.bound = eff;
        return dag_.add(std::move(c));
    }

    int ground_family_body(const PredicateFamily& fam, const std::vector<PrecomputedTerm>& xs,
                           const std::vector<PrecomputedTerm>& vs) {
        Env env;
        for (std::size_t i = 0; i < fam.x_vars.size(); ++i) env[fam.x_vars[i]] = xs[i];
        for (std::size_t i = 0; i < fam.v_vars.size(); ++i) env[fam.v_vars[i]] = vs[i];
        return go(fam.body, env);
    }

    static bool has_negation(const FormulaPtr& f) {
        switch (f->kind) {
            case Formula::Kind::Atom:
            case Formula::Kind::Cmp:
            case Formula::Kind::True:
            case Formula::Kind::False:
                return false;
            case Formula::Kind::Not:
                return true;
            case Formula::Kind::Forall:
            case Formula::Kind::Exists:
                return has_negation(f->a);
            case Formula::Kind::Implies:
                return true;  // the antecedent is a negative position
            default:
                return has_negation(f->a) || has_negation(f->b);
        }
    }

    // Ground body instances for every witness tuple over the general domain,
    // optionally restricted to tuples lexicographically >= min_x. Returns
    // (list node, statically-true count, live count).
    std::tuple<int, std::int64_t, std::int64_t> witness_list(
        int fam_id, const PredicateFamily& fam, const std::vector<PrecomputedTerm>& vs,
        const std::vector<PrecomputedTerm>* min_x) {
        if (has_negation(fam.body))
            warn("counts over the aggregate element with condition " +
                 to_string(fam.body, PrintStyle{false, false, nullptr}) +
                 " are truncation-sensitive: negated conditions have witnesses outside every "
                 "finite universe");
        std::string key = std::to_string(fam_id);
        for (const auto& v : vs) key += "|" + v.str();
        if (min_x) {
            key += "#";
            for (const auto& x : *min_x) key += "|" + x.str();
        }
        auto it = list_memo_.find(key);
        if (it != list_memo_.end()) return it->second;

        std::size_t nx = fam.x_vars.size();
        std::vector<std::size_t> idx(nx, 0);
        std::vector<int> live_kids;
        std::int64_t base = 0;
        const auto& dom = domains_.general;
        for (;;) {
            std::vector<PrecomputedTerm> tuple;
            tuple.reserve(nx);
            for (std::size_t i : idx) tuple.push_back(dom[i]);
            bool admissible = true;
            if (min_x) {
                // Lexicographic tuple comparison over the term order.
                int cmp = 0;
                for (std::size_t i = 0; i < nx; ++i) {
                    if (tuple[i] < (*min_x)[i]) { cmp = -1; break; }
                    if ((*min_x)[i] < tuple[i]) { cmp = 1; break; }
                }
                admissible = cmp >= 0;
            }
            if (admissible) {
                int g = ground_family_body(fam, tuple, vs);
                if (is(g, Dag::Op::True))
                    ++base;
                else if (!is(g, Dag::Op::False))
                    live_kids.push_back(g);
            }
            int pos = static_cast<int>(nx) - 1;
            while (pos >= 0) {
                if (++idx[static_cast<std::size_t>(pos)] < dom.size()) break;
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
        std::int64_t live = static_cast<std::int64_t>(live_kids.size());
        Dag::Node n;
        n.op = Dag::Op::List;
        n.kids = std::move(live_kids);
        int list = dag_.add(std::move(n));
        auto result = std::make_tuple(list, base, live);
        list_memo_.emplace(std::move(key), result);
        return result;
    }

    Dag& dag_;
    const Universe& universe_;
    const AtomTable& atoms_;
    const FamilyRegistry* registry_;
    Domains domains_;
    std::map<std::string, std::tuple<int, std::int64_t, std::int64_t>> list_memo_;
    std::set<std::string> warned_;
};

}  // namespace

GroundFormula ground(const FormulaPtr& f, const Universe& u, const AtomTable& atoms,
                     const FamilyRegistry* registry, const GroundOptions& opts) {
    GroundFormula g;
    g.dag = std::make_shared<Dag>();
    Grounder gr(*g.dag, u, atoms, registry, opts);
    g.root = gr.ground_sentence(f);
    return g;
}

std::pair<GroundFormula, GroundFormula> ground_pair(const FormulaPtr& f1, const FormulaPtr& f2,
                                                    const Universe& u, const AtomTable& atoms,
                                                    const FamilyRegistry* registry,
                                                    const GroundOptions& opts) {
    auto dag = std::make_shared<Dag>();
    Grounder gr(*dag, u, atoms, registry, opts);
    GroundFormula a, b;
    a.dag = dag;
    b.dag = dag;
    a.root = gr.ground_sentence(f1);
    b.root = gr.ground_sentence(f2);
    return {a, b};
}

int auto_margin(const FormulaPtr& f, const Universe& u, const FamilyRegistry* registry) {
    int max_x = 0;
    std::set<PredRef> preds;
    collect_preds(f, preds);
    for (const PredRef& p : preds) {
        if (p.kind == PredKind::Plain || !registry) continue;
        max_x = std::max(max_x,
                         static_cast<int>(registry->family(p.family).x_vars.size()));
    }
    double witnesses = 1.0;
    for (int i = 0; i < max_x; ++i) witnesses *= static_cast<double>(u.terms.size());
    double margin = witnesses + static_cast<double>(u.terms.size()) + 8.0;
    if (margin > 64.0) return 64;
    return static_cast<int>(margin);
}

// ---------------------------------------------------------------------------
// Pair evaluation over the DAG
// ---------------------------------------------------------------------------

PairEvaluator::PairEvaluator(const Dag& dag)
    : dag_(dag), stamp_(dag.nodes.size(), 0), value_(dag.nodes.size(), 0) {}

std::pair<bool, bool> PairEvaluator::eval(int root, const HTPair& pair) {
    ++now_;
    pair_ = pair;
    std::uint8_t bits = compute(root);
    return {(bits & 1) != 0, (bits & 2) != 0};
}

std::uint8_t PairEvaluator::compute(int id) {
    std::size_t i = static_cast<std::size_t>(id);
    if (stamp_[i] == now_) return value_[i];
    const Dag::Node& n = dag_.nodes[i];
    std::uint8_t bits = 0;
    switch (n.op) {
        case Dag::Op::False:
            bits = 0;
            break;
        case Dag::Op::True:
            bits = 3;
            break;
        case Dag::Op::Atom: {
            bool c = (pair_.there >> n.atom) & 1;
            bool h = (pair_.here >> n.atom) & 1;
            bits = static_cast<std::uint8_t>((c ? 1 : 0) | (h ? 2 : 0));
            break;
        }
        case Dag::Op::Not: {
            bool nc = ((compute(n.a) & 1) == 0);
            bits = static_cast<std::uint8_t>(nc ? 3 : 0);
            break;
        }
        case Dag::Op::And: {
            bits = 3;
            for (int k : n.kids) {
                bits &= compute(k);
                if (bits == 0) break;
            }
            break;
        }
        case Dag::Op::Or: {
            bits = 0;
            for (int k : n.kids) {
                bits |= compute(k);
                if (bits == 3) break;
            }
            break;
        }
        case Dag::Op::Impl: {
            std::uint8_t va = compute(n.a);
            std::uint8_t vb = compute(n.b);
            bool c = !(va & 1) || (vb & 1);
            bool h = c && (!(va & 2) || (vb & 2));
            bits = static_cast<std::uint8_t>((c ? 1 : 0) | (h ? 2 : 0));
            break;
        }
        case Dag::Op::CountGe:
        case Dag::Op::CountLe: {
            const Dag::Node& list = dag_.nodes[static_cast<std::size_t>(n.a)];
            std::int64_t c_cnt = 0, h_cnt = 0;
            for (int k : list.kids) {
                std::uint8_t v = compute(k);
                c_cnt += v & 1;
                h_cnt += (v >> 1) & 1;
            }
            if (n.op == Dag::Op::CountGe) {
                bool c = c_cnt >= n.bound;
                bool h = h_cnt >= n.bound;
                bits = static_cast<std::uint8_t>((c ? 1 : 0) | (h ? 2 : 0));
            } else {
                // The HT value of an at-most bound coincides with its
                // classical value at the there-world.
                bool c = c_cnt <= n.bound;
                bits = static_cast<std::uint8_t>(c ? 3 : 0);
            }
            break;
        }
        case Dag::Op::List:
            throw std::logic_error("list nodes are not directly evaluable");
    }
    stamp_[i] = now_;
    value_[i] = bits;
    return bits;
}

std::pair<bool, bool> eval_pair(const Dag& dag, int root, const HTPair& pair) {
    PairEvaluator ev(dag);
    return ev.eval(root, pair);
}

bool ht_sat(const HTPair& pair, const Dag& dag, int root) {
    if (!pair.valid()) throw std::invalid_argument("HT pair requires here <= there");
    return eval_pair(dag, root, pair).second;
}

bool ht_sat(const HTPair& pair, const GroundFormula& g) { return ht_sat(pair, *g.dag, g.root); }

}  // namespace mgc
