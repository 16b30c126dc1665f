#include "mgc/parser.hpp"

#include <cctype>
#include <cstdlib>

namespace mgc {

namespace {

enum class Tok {
    End, Ident, Variable, Numeral, Not, Count,
    If,        // :-
    Comma, Dot, LParen, RParen, LBrace, RBrace, Colon, Pipe,
    Plus, Minus, Star, Slash, Backslash, DotDot,
    Eq, Ne, Lt, Gt, Le, Ge,
};

struct Token {
    Tok kind;
    std::string text;
    std::int64_t value = 0;
    int line = 1;
    int col = 1;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

    int cur() const { return pos_ < src_.size() ? static_cast<unsigned char>(src_[pos_]) : -1; }

    void bump() {
        if (pos_ >= src_.size()) return;
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip_space() {
        for (;;) {
            int c = cur();
            if (c == '%') {
                while (cur() != -1 && cur() != '\n') bump();
            } else if (c != -1 && std::isspace(c)) {
                bump();
            } else {
                return;
            }
        }
    }

    void advance() {
        skip_space();
        tok_ = Token{};
        tok_.line = line_;
        tok_.col = col_;
        int c = cur();
        if (c == -1) {
            tok_.kind = Tok::End;
            return;
        }
        if (std::isdigit(c)) {
            std::string num;
            while (cur() != -1 && std::isdigit(cur())) {
                num += static_cast<char>(cur());
                bump();
            }
            errno = 0;
            char* end = nullptr;
            long long v = std::strtoll(num.c_str(), &end, 10);
            if (errno != 0) fail("numeral out of range");
            tok_.kind = Tok::Numeral;
            tok_.value = v;
            tok_.text = num;
            return;
        }
        if (std::isalpha(c) || c == '_') {
            std::string id;
            while (cur() != -1 && (std::isalnum(cur()) || cur() == '_' || cur() == '\'')) {
                id += static_cast<char>(cur());
                bump();
            }
            tok_.text = id;
            if (id == "not")
                tok_.kind = Tok::Not;
            else if (id == "count")
                tok_.kind = Tok::Count;
            else if (std::isupper(static_cast<unsigned char>(id[0])))
                tok_.kind = Tok::Variable;
            else
                tok_.kind = Tok::Ident;
            return;
        }
        switch (c) {
            case '#': {
                bump();
                std::string id;
                while (cur() != -1 && std::isalnum(cur())) {
                    id += static_cast<char>(cur());
                    bump();
                }
                if (id != "count") fail("unknown directive '#" + id + "'");
                tok_.kind = Tok::Count;
                tok_.text = "#count";
                return;
            }
            case ':':
                bump();
                if (cur() == '-') {
                    bump();
                    tok_.kind = Tok::If;
                } else {
                    tok_.kind = Tok::Colon;
                }
                return;
            case ',': bump(); tok_.kind = Tok::Comma; return;
            case '.':
                bump();
                if (cur() == '.') {
                    bump();
                    tok_.kind = Tok::DotDot;
                } else {
                    tok_.kind = Tok::Dot;
                }
                return;
            case '(': bump(); tok_.kind = Tok::LParen; return;
            case ')': bump(); tok_.kind = Tok::RParen; return;
            case '{': bump(); tok_.kind = Tok::LBrace; return;
            case '}': bump(); tok_.kind = Tok::RBrace; return;
            case '|': bump(); tok_.kind = Tok::Pipe; return;
            case '+': bump(); tok_.kind = Tok::Plus; return;
            case '-': bump(); tok_.kind = Tok::Minus; return;
            case '*': bump(); tok_.kind = Tok::Star; return;
            case '/': bump(); tok_.kind = Tok::Slash; return;
            case '\\': bump(); tok_.kind = Tok::Backslash; return;
            case '=': bump(); tok_.kind = Tok::Eq; return;
            case '!':
                bump();
                if (cur() != '=') fail("expected '=' after '!'");
                bump();
                tok_.kind = Tok::Ne;
                return;
            case '<':
                bump();
                if (cur() == '=') {
                    bump();
                    tok_.kind = Tok::Le;
                } else if (cur() == '>') {
                    bump();
                    tok_.kind = Tok::Ne;
                } else {
                    tok_.kind = Tok::Lt;
                }
                return;
            case '>':
                bump();
                if (cur() == '=') {
                    bump();
                    tok_.kind = Tok::Ge;
                } else {
                    tok_.kind = Tok::Gt;
                }
                return;
            default:
                fail(std::string("unexpected character '") + static_cast<char>(c) + "'");
        }
    }

    const std::string& src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

class Parser {
  public:
    explicit Parser(const std::string& src) : lex_(src) {}

    Program program() {
        Program p;
        while (lex_.peek().kind != Tok::End) p.rules.push_back(rule());
        return p;
    }

    Rule rule() {
        Rule r;
        const Token& t = lex_.peek();
        if (t.kind == Tok::If) {
            lex_.take();
            r.head_kind = Rule::HeadKind::Constraint;
            if (lex_.peek().kind != Tok::Dot) r.body = body();
        } else if (t.kind == Tok::LBrace) {
            lex_.take();
            r.head_kind = Rule::HeadKind::Choice;
            r.head = atom();
            expect(Tok::RBrace, "'}'");
            if (lex_.peek().kind == Tok::If) {
                lex_.take();
                r.body = body();
            }
        } else {
            r.head_kind = Rule::HeadKind::Basic;
            r.head = atom();
            if (lex_.peek().kind == Tok::If) {
                lex_.take();
                r.body = body();
            }
        }
        expect(Tok::Dot, "'.'");
        return r;
    }

  private:
    [[noreturn]] void fail(const std::string& msg) {
        const Token& t = lex_.peek();
        throw ParseError(msg, t.line, t.col);
    }

    Token expect(Tok kind, const std::string& what) {
        if (lex_.peek().kind != kind) fail("expected " + what);
        return lex_.take();
    }

    std::vector<BodyElement> body() {
        std::vector<BodyElement> out;
        out.push_back(body_element());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            out.push_back(body_element());
        }
        return out;
    }

    BodyElement body_element() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Count) return BodyElement::aggregate(aggregate());
        if (t.kind == Tok::Not) return BodyElement::literal(literal());
        if (t.kind == Tok::Ident) {
            // Could be an atom or a comparison starting with a constant.
            Conjunct c = literal_or_comparison();
            return c.kind == Conjunct::Kind::Literal ? BodyElement::literal(c.lit)
                                                     : BodyElement::comparison(c.cmp);
        }
        // Everything else must start a comparison term.
        MgcTermPtr lhs = term();
        return BodyElement::comparison(finish_comparison(lhs));
    }

    Conjunct literal_or_comparison() {
        if (lex_.peek().kind == Tok::Not) return Conjunct::literal(literal());
        if (lex_.peek().kind == Tok::Ident) {
            Token id = lex_.take();
            if (lex_.peek().kind == Tok::LParen) {
                MgcAtom a;
                a.pred = id.text;
                a.args = term_list();
                if (is_cmp(lex_.peek().kind)) {
                    // p(...) followed by a comparison operator is not a term.
                    fail("atoms cannot appear in comparisons");
                }
                return Conjunct::literal(MgcLiteral{std::move(a), 0});
            }
            if (is_cmp(lex_.peek().kind) || starts_arith(lex_.peek().kind)) {
                MgcTermPtr lhs = term_from_ident(id);
                return Conjunct::comparison(finish_comparison(lhs));
            }
            return Conjunct::literal(MgcLiteral{MgcAtom{id.text, {}}, 0});
        }
        MgcTermPtr lhs = term();
        return Conjunct::comparison(finish_comparison(lhs));
    }

    static bool is_cmp(Tok k) {
        return k == Tok::Eq || k == Tok::Ne || k == Tok::Lt || k == Tok::Gt || k == Tok::Le ||
               k == Tok::Ge;
    }

    static bool starts_arith(Tok k) {
        return k == Tok::Plus || k == Tok::Minus || k == Tok::Star || k == Tok::Slash ||
               k == Tok::Backslash || k == Tok::DotDot;
    }

    MgcLiteral literal() {
        int negs = 0;
        while (lex_.peek().kind == Tok::Not) {
            lex_.take();
            ++negs;
        }
        if (negs > 2) fail("at most two occurrences of 'not' are allowed");
        return MgcLiteral{atom(), negs};
    }

    MgcAtom atom() {
        Token id = expect(Tok::Ident, "predicate name");
        MgcAtom a;
        a.pred = id.text;
        if (lex_.peek().kind == Tok::LParen) a.args = term_list();
        return a;
    }

    std::vector<MgcTermPtr> term_list() {
        expect(Tok::LParen, "'('");
        std::vector<MgcTermPtr> args;
        args.push_back(term());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            args.push_back(term());
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    MgcComparison finish_comparison(MgcTermPtr lhs) {
        Token op = lex_.take();
        CmpOp c;
        switch (op.kind) {
            case Tok::Eq: c = CmpOp::Eq; break;
            case Tok::Ne: c = CmpOp::Ne; break;
            case Tok::Lt: c = CmpOp::Lt; break;
            case Tok::Gt: c = CmpOp::Gt; break;
            case Tok::Le: c = CmpOp::Le; break;
            case Tok::Ge: c = CmpOp::Ge; break;
            default: throw ParseError("expected comparison operator", op.line, op.col);
        }
        return MgcComparison{std::move(lhs), c, term()};
    }

    MgcAggregate aggregate() {
        lex_.take();  // count
        expect(Tok::LBrace, "'{'");
        MgcAggregate agg;
        Token v = expect(Tok::Variable, "variable in aggregate tuple");
        agg.element.tuple.push_back(v.text);
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            Token w = expect(Tok::Variable, "variable in aggregate tuple");
            agg.element.tuple.push_back(w.text);
        }
        for (std::size_t i = 0; i < agg.element.tuple.size(); ++i)
            for (std::size_t j = i + 1; j < agg.element.tuple.size(); ++j)
                if (agg.element.tuple[i] == agg.element.tuple[j])
                    fail("repeated variable in aggregate tuple");
        expect(Tok::Colon, "':'");
        agg.element.condition.push_back(literal_or_comparison());
        while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            agg.element.condition.push_back(literal_or_comparison());
        }
        Token close = expect(Tok::RBrace, "'}'");
        Token rel = lex_.take();
        switch (rel.kind) {
            case Tok::Ge: agg.rel = AggRel::Geq; break;
            case Tok::Le: agg.rel = AggRel::Leq; break;
            case Tok::Eq: agg.rel = AggRel::Eq; break;
            case Tok::Lt:
            case Tok::Gt:
            case Tok::Ne:
                throw ParseError("aggregate atoms support only >=, <= and =", rel.line, rel.col);
            default:
                throw ParseError("expected comparison after aggregate", rel.line, rel.col);
        }
        Token bound_pos = lex_.peek();
        agg.bound = term();
        if (agg.bound->contains_interval())
            throw ParseError("interval symbol is not allowed in an aggregate bound",
                             bound_pos.line, bound_pos.col);
        // Every tuple variable must occur in the condition.
        std::set<std::string> cond_vars;
        for (const Conjunct& c : agg.element.condition) {
            if (c.kind == Conjunct::Kind::Literal) {
                for (const auto& t : c.lit.atom.args) t->collect_vars(cond_vars);
            } else {
                c.cmp.lhs->collect_vars(cond_vars);
                c.cmp.rhs->collect_vars(cond_vars);
            }
        }
        for (const std::string& x : agg.element.tuple)
            if (!cond_vars.count(x))
                throw ParseError("aggregate tuple variable " + x + " does not occur in the condition",
                                 close.line, close.col);
        return agg;
    }

    // Precedence climbing: .. < +,- < *,/,\ .
    MgcTermPtr term() { return term_interval(); }

    MgcTermPtr term_from_ident(const Token& id) {
        MgcTermPtr base = MgcTerm::precomputed(PrecomputedTerm::symbolic(id.text));
        return continue_term(base);
    }

    MgcTermPtr continue_term(MgcTermPtr lhs) {
        // Resume precedence climbing after an already-read primary.
        lhs = continue_mul(lhs);
        lhs = continue_add(lhs);
        return continue_intervals(lhs);
    }

    MgcTermPtr term_interval() {
        MgcTermPtr lhs = term_add();
        return continue_intervals(lhs);
    }

    MgcTermPtr continue_intervals(MgcTermPtr lhs) {
        while (lex_.peek().kind == Tok::DotDot) {
            lex_.take();
            lhs = MgcTerm::binop(MgcOp::Interval, lhs, term_add());
        }
        return lhs;
    }

    MgcTermPtr term_add() {
        MgcTermPtr lhs = term_mul();
        return continue_add(lhs);
    }

    MgcTermPtr continue_add(MgcTermPtr lhs) {
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Plus) {
                lex_.take();
                lhs = MgcTerm::binop(MgcOp::Add, lhs, term_mul());
            } else if (k == Tok::Minus) {
                lex_.take();
                lhs = MgcTerm::binop(MgcOp::Sub, lhs, term_mul());
            } else {
                return lhs;
            }
        }
    }

    MgcTermPtr term_mul() {
        MgcTermPtr lhs = primary();
        return continue_mul(lhs);
    }

    MgcTermPtr continue_mul(MgcTermPtr lhs) {
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k == Tok::Star) {
                lex_.take();
                lhs = MgcTerm::binop(MgcOp::Mul, lhs, primary());
            } else if (k == Tok::Slash) {
                lex_.take();
                lhs = MgcTerm::binop(MgcOp::Div, lhs, primary());
            } else if (k == Tok::Backslash) {
                lex_.take();
                lhs = MgcTerm::binop(MgcOp::Mod, lhs, primary());
            } else {
                return lhs;
            }
        }
    }

    MgcTermPtr primary() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::Numeral:
                return MgcTerm::precomputed(PrecomputedTerm::numeral(t.value));
            case Tok::Minus: {
                // Unary minus only on numerals; MGC has no general negation.
                Token n = expect(Tok::Numeral, "numeral after unary '-'");
                return MgcTerm::precomputed(PrecomputedTerm::numeral(-n.value));
            }
            case Tok::Ident:
                return MgcTerm::precomputed(PrecomputedTerm::symbolic(t.text));
            case Tok::Variable:
                return MgcTerm::variable(t.text);
            case Tok::Pipe: {
                MgcTermPtr inner = term();
                expect(Tok::Pipe, "closing '|'");
                return MgcTerm::abs(inner);
            }
            case Tok::LParen: {
                MgcTermPtr inner = term();
                expect(Tok::RParen, "')'");
                return inner;
            }
            default:
                throw ParseError("expected term", t.line, t.col);
        }
    }

    Lexer lex_;
};

}  // namespace

Program parse_program(const std::string& text) {
    Parser p(text);
    return p.program();
}

Rule parse_rule(const std::string& text) {
    Parser p(text);
    return p.rule();
}

}  // namespace mgc
