#include "mgc/formula_parser.hpp"

#include <cctype>
#include <vector>

namespace mgc {

namespace {

struct FTok {
    enum Kind {
        End, Ident, Var, Num, LParen, RParen, Comma, Pipe,
        Plus, Minus, Star, Not, And, Or, Implies, Iff,
        Eq, Ne, Lt, Gt, Le, Ge, Forall, Exists, True, False
    };
    Kind kind;
    std::string text;
    std::int64_t value = 0;
};

class FLexer {
  public:
    explicit FLexer(const std::string& s) : src_(s) { next(); }
    const FTok& peek() const { return tok_; }
    FTok take() {
        FTok t = tok_;
        next();
        return t;
    }

  private:
    void next() {
        while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        tok_ = FTok{FTok::End, "", 0};
        if (pos_ >= src_.size()) return;
        char c = src_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::int64_t v = 0;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
                v = v * 10 + (src_[pos_++] - '0');
            tok_ = FTok{FTok::Num, "", v};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '#') {
            std::string id;
            if (c == '#') {
                ++pos_;
                id = "#";
            }
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) ||
                                          src_[pos_] == '_'))
                id += src_[pos_++];
            if (id == "forall") tok_ = FTok{FTok::Forall, id, 0};
            else if (id == "exists") tok_ = FTok{FTok::Exists, id, 0};
            else if (id == "and") tok_ = FTok{FTok::And, id, 0};
            else if (id == "or") tok_ = FTok{FTok::Or, id, 0};
            else if (id == "not") tok_ = FTok{FTok::Not, id, 0};
            else if (id == "#true") tok_ = FTok{FTok::True, id, 0};
            else if (id == "#false") tok_ = FTok{FTok::False, id, 0};
            else if (std::isupper(static_cast<unsigned char>(id[0]))) tok_ = FTok{FTok::Var, id, 0};
            else tok_ = FTok{FTok::Ident, id, 0};
            return;
        }
        ++pos_;
        switch (c) {
            case '(': tok_ = FTok{FTok::LParen, "(", 0}; return;
            case ')': tok_ = FTok{FTok::RParen, ")", 0}; return;
            case ',': tok_ = FTok{FTok::Comma, ",", 0}; return;
            case '&': tok_ = FTok{FTok::And, "&", 0}; return;
            case '~': tok_ = FTok{FTok::Not, "~", 0}; return;
            case '+': tok_ = FTok{FTok::Plus, "+", 0}; return;
            case '*': tok_ = FTok{FTok::Star, "*", 0}; return;
            case '/':
            case '\\':
                throw std::invalid_argument("/, \\ and .. do not occur in first-order terms");
            case '-':
                if (pos_ < src_.size() && src_[pos_] == '>') {
                    ++pos_;
                    tok_ = FTok{FTok::Implies, "->", 0};
                } else {
                    tok_ = FTok{FTok::Minus, "-", 0};
                }
                return;
            case '|': tok_ = FTok{FTok::Pipe, "|", 0}; return;
            case '=': tok_ = FTok{FTok::Eq, "=", 0}; return;
            case '!':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    ++pos_;
                    tok_ = FTok{FTok::Ne, "!=", 0};
                    return;
                }
                throw std::invalid_argument("stray '!'");
            case '<':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    ++pos_;
                    tok_ = FTok{FTok::Le, "<=", 0};
                } else if (pos_ + 1 < src_.size() && src_[pos_] == '-' && src_[pos_ + 1] == '>') {
                    pos_ += 2;
                    tok_ = FTok{FTok::Iff, "<->", 0};
                } else {
                    tok_ = FTok{FTok::Lt, "<", 0};
                }
                return;
            case '>':
                if (pos_ < src_.size() && src_[pos_] == '=') {
                    ++pos_;
                    tok_ = FTok{FTok::Ge, ">=", 0};
                } else {
                    tok_ = FTok{FTok::Gt, ">", 0};
                }
                return;
            default:
                throw std::invalid_argument(std::string("unexpected character '") + c + "'");
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    FTok tok_;
};

Sort var_sort(const std::string& name) {
    char c = name[0];
    return c >= 'I' && c <= 'N' ? Sort::Integer : Sort::General;
}

class FParser {
  public:
    FParser(const std::string& text, const FamilyRegistry& reg) : lex_(text), reg_(reg) {}

    FormulaPtr formula() {
        FormulaPtr f = iff();
        if (lex_.peek().kind != FTok::End) throw std::invalid_argument("trailing input in formula");
        return f;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

    FormulaPtr iff() {
        FormulaPtr lhs = implies();
        while (lex_.peek().kind == FTok::Iff) {
            lex_.take();
            lhs = mk_iff(lhs, implies());
        }
        return lhs;
    }

    FormulaPtr implies() {
        FormulaPtr lhs = disj();
        if (lex_.peek().kind == FTok::Implies) {
            lex_.take();
            return mk_implies(lhs, implies());  // right associative
        }
        return lhs;
    }

    FormulaPtr disj() {
        FormulaPtr lhs = conj();
        while (lex_.peek().kind == FTok::Or) {
            lex_.take();
            lhs = mk_or(lhs, conj());
        }
        return lhs;
    }

    FormulaPtr conj() {
        FormulaPtr lhs = unary();
        while (lex_.peek().kind == FTok::And) {
            lex_.take();
            lhs = mk_and(lhs, unary());
        }
        return lhs;
    }

    FormulaPtr unary() {
        const FTok& t = lex_.peek();
        if (t.kind == FTok::Not) {
            lex_.take();
            return mk_not(unary());
        }
        if (t.kind == FTok::Forall || t.kind == FTok::Exists) {
            bool forall = t.kind == FTok::Forall;
            lex_.take();
            std::vector<std::string> vars;
            while (lex_.peek().kind == FTok::Var) vars.push_back(lex_.take().text);
            if (vars.empty()) fail("quantifier without variables");
            if (lex_.peek().kind != FTok::LParen) fail("expected '(' after quantifier");
            lex_.take();
            FormulaPtr body = iff();
            expect(FTok::RParen, ")");
            for (auto it = vars.rbegin(); it != vars.rend(); ++it)
                body = forall ? mk_forall(*it, var_sort(*it), body)
                              : mk_exists(*it, var_sort(*it), body);
            return body;
        }
        return atom_or_cmp();
    }

    FTok expect(FTok::Kind k, const std::string& what) {
        if (lex_.peek().kind != k) fail("expected " + what);
        return lex_.take();
    }

    FormulaPtr atom_or_cmp() {
        const FTok& t = lex_.peek();
        if (t.kind == FTok::True) {
            lex_.take();
            return mk_true();
        }
        if (t.kind == FTok::False) {
            lex_.take();
            return mk_false();
        }
        if (t.kind == FTok::LParen) {
            lex_.take();
            FormulaPtr inner = iff();
            if (lex_.peek().kind == FTok::RParen) {
                lex_.take();
                return inner;
            }
            fail("expected ')'");
        }
        if (t.kind == FTok::Ident) {
            FTok id = lex_.take();
            std::vector<FoTermPtr> args;
            if (lex_.peek().kind == FTok::LParen) {
                lex_.take();
                args.push_back(term());
                while (lex_.peek().kind == FTok::Comma) {
                    lex_.take();
                    args.push_back(term());
                }
                expect(FTok::RParen, ")");
            }
            if (lex_.peek().kind != FTok::End && is_cmp(lex_.peek().kind) && args.empty()) {
                // A bare constant followed by a comparison.
                FoTermPtr lhs = FoTerm::constant_term(PrecomputedTerm::symbolic(id.text));
                return finish_cmp(lhs);
            }
            return make_atom(id.text, std::move(args));
        }
        // Comparison starting with a term.
        FoTermPtr lhs = term();
        return finish_cmp(lhs);
    }

    static bool is_cmp(FTok::Kind k) {
        return k == FTok::Eq || k == FTok::Ne || k == FTok::Lt || k == FTok::Gt ||
               k == FTok::Le || k == FTok::Ge;
    }

    FormulaPtr finish_cmp(FoTermPtr lhs) {
        FTok op = lex_.take();
        CmpRel rel;
        switch (op.kind) {
            case FTok::Eq: rel = CmpRel::Eq; break;
            case FTok::Ne: rel = CmpRel::Ne; break;
            case FTok::Lt: rel = CmpRel::Lt; break;
            case FTok::Gt: rel = CmpRel::Gt; break;
            case FTok::Le: rel = CmpRel::Le; break;
            case FTok::Ge: rel = CmpRel::Ge; break;
            default: fail("expected a comparison operator");
        }
        return mk_cmp(std::move(lhs), rel, term());
    }

    FormulaPtr make_atom(const std::string& name, std::vector<FoTermPtr> args) {
        for (auto [prefix, kind] : {std::pair<const char*, PredKind>{"atleast_", PredKind::Atleast},
                                    {"atmost_", PredKind::Atmost},
                                    {"start_", PredKind::Start}}) {
            if (name.rfind(prefix, 0) != 0) continue;
            std::string digest = name.substr(std::string(prefix).size());
            for (int id = 0; id < reg_.size(); ++id) {
                if (reg_.family(id).digest != digest) continue;
                return mk_family_atom(kind, reg_, id, std::move(args));
            }
            fail("unknown predicate family digest " + digest);
        }
        int arity = static_cast<int>(args.size());
        return mk_atom(PredRef{PredKind::Plain, name, arity, -1, false}, std::move(args));
    }

    FoTermPtr term() { return term_add(); }

    FoTermPtr term_add() {
        FoTermPtr lhs = term_mul();
        for (;;) {
            FTok::Kind k = lex_.peek().kind;
            if (k == FTok::Plus) {
                lex_.take();
                lhs = FoTerm::binop(FoOp::Add, lhs, term_mul());
            } else if (k == FTok::Minus) {
                lex_.take();
                lhs = FoTerm::binop(FoOp::Sub, lhs, term_mul());
            } else {
                return lhs;
            }
        }
    }

    FoTermPtr term_mul() {
        FoTermPtr lhs = term_primary();
        while (lex_.peek().kind == FTok::Star) {
            lex_.take();
            lhs = FoTerm::binop(FoOp::Mul, lhs, term_primary());
        }
        return lhs;
    }

    FoTermPtr term_primary() {
        FTok t = lex_.take();
        switch (t.kind) {
            case FTok::Num:
                return FoTerm::constant_term(PrecomputedTerm::numeral(t.value));
            case FTok::Minus: {
                FTok n = expect(FTok::Num, "numeral after '-'");
                return FoTerm::constant_term(PrecomputedTerm::numeral(-n.value));
            }
            case FTok::Ident:
                return FoTerm::constant_term(PrecomputedTerm::symbolic(t.text));
            case FTok::Var:
                return FoTerm::variable(t.text, var_sort(t.text));
            case FTok::Pipe: {
                FoTermPtr inner = term();
                expect(FTok::Pipe, "closing '|'");
                return FoTerm::abs(inner);
            }
            case FTok::LParen: {
                FoTermPtr inner = term();
                expect(FTok::RParen, ")");
                return inner;
            }
            default:
                fail("expected a term");
        }
        return nullptr;
    }

    FLexer lex_;
    const FamilyRegistry& reg_;
};

}  // namespace

FormulaPtr parse_formula(const std::string& text, const FamilyRegistry& registry) {
    FParser p(text, registry);
    return p.formula();
}

}  // namespace mgc
