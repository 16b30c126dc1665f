#include "mgc/ast.hpp"

#include <sstream>

namespace mgc {

MgcTermPtr MgcTerm::precomputed(PrecomputedTerm c) {
    auto t = std::make_shared<MgcTerm>();
    t->kind = Kind::Precomputed;
    t->constant = std::move(c);
    return t;
}

MgcTermPtr MgcTerm::variable(std::string name) {
    auto t = std::make_shared<MgcTerm>();
    t->kind = Kind::Variable;
    t->var = std::move(name);
    return t;
}

MgcTermPtr MgcTerm::abs(MgcTermPtr inner) {
    auto t = std::make_shared<MgcTerm>();
    t->kind = Kind::Abs;
    t->lhs = std::move(inner);
    return t;
}

MgcTermPtr MgcTerm::binop(MgcOp op, MgcTermPtr l, MgcTermPtr r) {
    auto t = std::make_shared<MgcTerm>();
    t->kind = Kind::BinOp;
    t->op = op;
    t->lhs = std::move(l);
    t->rhs = std::move(r);
    return t;
}

bool MgcTerm::contains_interval() const {
    switch (kind) {
        case Kind::Precomputed:
        case Kind::Variable:
            return false;
        case Kind::Abs:
            return lhs->contains_interval();
        case Kind::BinOp:
            return op == MgcOp::Interval || lhs->contains_interval() || rhs->contains_interval();
    }
    return false;
}

void MgcTerm::collect_vars(std::set<std::string>& out) const {
    switch (kind) {
        case Kind::Precomputed:
            return;
        case Kind::Variable:
            out.insert(var);
            return;
        case Kind::Abs:
            lhs->collect_vars(out);
            return;
        case Kind::BinOp:
            lhs->collect_vars(out);
            rhs->collect_vars(out);
            return;
    }
}

bool equal(const MgcTermPtr& a, const MgcTermPtr& b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
        case MgcTerm::Kind::Precomputed:
            return a->constant == b->constant;
        case MgcTerm::Kind::Variable:
            return a->var == b->var;
        case MgcTerm::Kind::Abs:
            return equal(a->lhs, b->lhs);
        case MgcTerm::Kind::BinOp:
            return a->op == b->op && equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    }
    return false;
}

namespace {

int precedence(MgcOp op) {
    switch (op) {
        case MgcOp::Interval: return 1;
        case MgcOp::Add:
        case MgcOp::Sub: return 2;
        case MgcOp::Mul:
        case MgcOp::Div:
        case MgcOp::Mod: return 3;
    }
    return 0;
}

const char* op_str(MgcOp op) {
    switch (op) {
        case MgcOp::Add: return "+";
        case MgcOp::Sub: return "-";
        case MgcOp::Mul: return "*";
        case MgcOp::Div: return "/";
        case MgcOp::Mod: return "\\";
        case MgcOp::Interval: return "..";
    }
    return "?";
}

void print_term(std::ostream& os, const MgcTermPtr& t, int parent_prec) {
    switch (t->kind) {
        case MgcTerm::Kind::Precomputed:
            os << t->constant.str();
            return;
        case MgcTerm::Kind::Variable:
            os << t->var;
            return;
        case MgcTerm::Kind::Abs:
            os << '|';
            print_term(os, t->lhs, 0);
            os << '|';
            return;
        case MgcTerm::Kind::BinOp: {
            int prec = precedence(t->op);
            bool paren = prec < parent_prec;
            if (paren) os << '(';
            print_term(os, t->lhs, prec);
            os << op_str(t->op);
            // Right operand needs parens at equal precedence: ops associate left.
            print_term(os, t->rhs, prec + 1);
            if (paren) os << ')';
            return;
        }
    }
}

void print_literal(std::ostream& os, const MgcLiteral& l) {
    for (int i = 0; i < l.negations; ++i) os << "not ";
    os << to_string(l.atom);
}

void print_comparison(std::ostream& os, const MgcComparison& c) {
    os << to_string(c.lhs) << ' ' << cmp_str(c.op) << ' ' << to_string(c.rhs);
}

const char* agg_rel_str(AggRel r) {
    switch (r) {
        case AggRel::Geq: return ">=";
        case AggRel::Leq: return "<=";
        case AggRel::Eq: return "=";
    }
    return "?";
}

}  // namespace

std::string cmp_str(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
        case CmpOp::Le: return "<=";
        case CmpOp::Ge: return ">=";
    }
    return "?";
}

std::string to_string(const MgcTermPtr& t) {
    std::ostringstream os;
    print_term(os, t, 0);
    return os.str();
}

std::string to_string(const MgcAtom& a) {
    std::ostringstream os;
    os << a.pred;
    if (!a.args.empty()) {
        os << '(';
        for (std::size_t i = 0; i < a.args.size(); ++i) {
            if (i) os << ", ";
            print_term(os, a.args[i], 0);
        }
        os << ')';
    }
    return os.str();
}

std::string to_string(const BodyElement& e) {
    std::ostringstream os;
    switch (e.kind) {
        case BodyElement::Kind::Literal:
            print_literal(os, e.lit);
            break;
        case BodyElement::Kind::Comparison:
            print_comparison(os, e.cmp);
            break;
        case BodyElement::Kind::Aggregate: {
            os << "#count{";
            for (std::size_t i = 0; i < e.agg.element.tuple.size(); ++i) {
                if (i) os << ", ";
                os << e.agg.element.tuple[i];
            }
            os << " : ";
            for (std::size_t i = 0; i < e.agg.element.condition.size(); ++i) {
                if (i) os << ", ";
                const Conjunct& c = e.agg.element.condition[i];
                if (c.kind == Conjunct::Kind::Literal)
                    print_literal(os, c.lit);
                else
                    print_comparison(os, c.cmp);
            }
            os << "} " << agg_rel_str(e.agg.rel) << ' ' << to_string(e.agg.bound);
            break;
        }
    }
    return os.str();
}

std::string to_string(const Rule& r) {
    std::ostringstream os;
    switch (r.head_kind) {
        case Rule::HeadKind::Basic:
            os << to_string(r.head);
            break;
        case Rule::HeadKind::Choice:
            os << '{' << to_string(r.head) << '}';
            break;
        case Rule::HeadKind::Constraint:
            break;
    }
    if (!r.body.empty()) {
        if (r.head_kind != Rule::HeadKind::Constraint) os << ' ';
        os << ":- ";
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            if (i) os << ", ";
            os << to_string(r.body[i]);
        }
    } else if (r.head_kind == Rule::HeadKind::Constraint) {
        os << ":- ";
    }
    os << '.';
    return os.str();
}

std::string to_string(const Program& p) {
    std::ostringstream os;
    for (const Rule& r : p.rules) os << to_string(r) << '\n';
    return os.str();
}

namespace {

void conjunct_vars(const Conjunct& c, std::set<std::string>& out) {
    if (c.kind == Conjunct::Kind::Literal) {
        for (const auto& t : c.lit.atom.args) t->collect_vars(out);
    } else {
        c.cmp.lhs->collect_vars(out);
        c.cmp.rhs->collect_vars(out);
    }
}

}  // namespace

VariableClasses classify_variables(const Rule& rule) {
    // Variables with an occurrence outside any aggregate element are global.
    std::set<std::string> outside;
    std::set<std::string> inside;

    for (const auto& t : rule.head.args) t->collect_vars(outside);
    for (const BodyElement& e : rule.body) {
        switch (e.kind) {
            case BodyElement::Kind::Literal:
                for (const auto& t : e.lit.atom.args) t->collect_vars(outside);
                break;
            case BodyElement::Kind::Comparison:
                e.cmp.lhs->collect_vars(outside);
                e.cmp.rhs->collect_vars(outside);
                break;
            case BodyElement::Kind::Aggregate:
                // The bound term sits outside the aggregate element.
                e.agg.bound->collect_vars(outside);
                for (const std::string& v : e.agg.element.tuple) inside.insert(v);
                for (const Conjunct& c : e.agg.element.condition) conjunct_vars(c, inside);
                break;
        }
    }

    VariableClasses out;
    out.global = outside;
    for (const std::string& v : inside)
        if (!outside.count(v)) out.local.insert(v);
    return out;
}

std::optional<Impurity> check_pure(const Rule& rule) {
    VariableClasses classes = classify_variables(rule);
    for (std::size_t i = 0; i < rule.body.size(); ++i) {
        const BodyElement& e = rule.body[i];
        if (e.kind != BodyElement::Kind::Aggregate) continue;
        for (const std::string& v : e.agg.element.tuple)
            if (classes.global.count(v)) return Impurity{v, i};
    }
    return std::nullopt;
}

Rule desugar_count_eq(const Rule& rule) {
    Rule out;
    out.head_kind = rule.head_kind;
    out.head = rule.head;
    for (const BodyElement& e : rule.body) {
        if (e.kind == BodyElement::Kind::Aggregate && e.agg.rel == AggRel::Eq) {
            MgcAggregate geq = e.agg;
            geq.rel = AggRel::Geq;
            MgcAggregate leq = e.agg;
            leq.rel = AggRel::Leq;
            out.body.push_back(BodyElement::aggregate(std::move(geq)));
            out.body.push_back(BodyElement::aggregate(std::move(leq)));
        } else {
            out.body.push_back(e);
        }
    }
    return out;
}

Program desugar_count_eq(const Program& prog) {
    Program out;
    out.rules.reserve(prog.rules.size());
    for (const Rule& r : prog.rules) out.rules.push_back(desugar_count_eq(r));
    return out;
}

std::set<std::string> rule_vars(const Rule& rule) {
    VariableClasses c = classify_variables(rule);
    std::set<std::string> all = c.global;
    all.insert(c.local.begin(), c.local.end());
    return all;
}

std::vector<std::pair<std::string, int>> collect_predicates(const Program& prog) {
    std::set<std::pair<std::string, int>> seen;
    auto add_atom = [&](const MgcAtom& a) { seen.insert({a.pred, static_cast<int>(a.args.size())}); };
    for (const Rule& r : prog.rules) {
        if (r.head_kind != Rule::HeadKind::Constraint) add_atom(r.head);
        for (const BodyElement& e : r.body) {
            switch (e.kind) {
                case BodyElement::Kind::Literal:
                    add_atom(e.lit.atom);
                    break;
                case BodyElement::Kind::Comparison:
                    break;
                case BodyElement::Kind::Aggregate:
                    for (const Conjunct& c : e.agg.element.condition)
                        if (c.kind == Conjunct::Kind::Literal) add_atom(c.lit.atom);
                    break;
            }
        }
    }
    return {seen.begin(), seen.end()};
}

namespace {

void term_constants(const MgcTermPtr& t, std::set<std::string>& out) {
    switch (t->kind) {
        case MgcTerm::Kind::Precomputed:
            if (t->constant.kind == PrecomputedTerm::Kind::Symbolic) out.insert(t->constant.name);
            return;
        case MgcTerm::Kind::Variable:
            return;
        case MgcTerm::Kind::Abs:
            term_constants(t->lhs, out);
            return;
        case MgcTerm::Kind::BinOp:
            term_constants(t->lhs, out);
            term_constants(t->rhs, out);
            return;
    }
}

}  // namespace

std::set<std::string> collect_constants(const Program& prog) {
    std::set<std::string> out;
    auto add_atom = [&](const MgcAtom& a) {
        for (const auto& t : a.args) term_constants(t, out);
    };
    for (const Rule& r : prog.rules) {
        if (r.head_kind != Rule::HeadKind::Constraint) add_atom(r.head);
        for (const BodyElement& e : r.body) {
            switch (e.kind) {
                case BodyElement::Kind::Literal:
                    add_atom(e.lit.atom);
                    break;
                case BodyElement::Kind::Comparison:
                    term_constants(e.cmp.lhs, out);
                    term_constants(e.cmp.rhs, out);
                    break;
                case BodyElement::Kind::Aggregate:
                    term_constants(e.agg.bound, out);
                    for (const Conjunct& c : e.agg.element.condition) {
                        if (c.kind == Conjunct::Kind::Literal)
                            add_atom(c.lit.atom);
                        else {
                            term_constants(c.cmp.lhs, out);
                            term_constants(c.cmp.rhs, out);
                        }
                    }
                    break;
            }
        }
    }
    return out;
}

}  // namespace mgc
