#ifndef PUQ_PARSE_HPP
#define PUQ_PARSE_HPP

#include <cctype>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "puq/ast.hpp"
#include "puq/builtins.hpp"
#include "puq/errors.hpp"
#include "puq/locations.hpp"

namespace puq {

/// Where a definition came from, 1-based.
struct DefOrigin {
    int line = 0;
    int column = 0;
};

/// A parsed source file: flat definitions in `program`, located definitions
/// and class entries in `store`, origins in textual order.
struct SourceProgram {
    Program program;
    ObjectStore store;
    std::vector<DefOrigin> origins;
};

namespace detail {

enum class Tok {
    Ident,
    Integer,
    KwDef,
    KwForall,
    KwPforall,
    KwAt,
    KwTop,
    KwTrue,
    KwFalse,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Dot,
    Slash,
    Eq,
    Plus,
    Minus,
    Star,
    Lt,
    Leq,
    Eof,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string text;
    Int ival;
    int line = 1;
    int column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string text) : text_(std::move(text)) { advance(); }

    const Token& peek() const { return tok_; }

    Token next() {
        Token t = tok_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_ws();
        tok_ = Token{};
        tok_.line = line_;
        tok_.column = col_;
        if (pos_ >= text_.size()) {
            tok_.kind = Tok::Eof;
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_'))
                bump();
            tok_.text = text_.substr(start, pos_ - start);
            tok_.kind = keyword(tok_.text);
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                bump();
            tok_.text = text_.substr(start, pos_ - start);
            tok_.kind = Tok::Integer;
            tok_.ival = Int(tok_.text);
            return;
        }
        bump();
        switch (c) {
        case '(': tok_.kind = Tok::LParen; return;
        case ')': tok_.kind = Tok::RParen; return;
        case '[': tok_.kind = Tok::LBracket; return;
        case ']': tok_.kind = Tok::RBracket; return;
        case ',': tok_.kind = Tok::Comma; return;
        case ';': tok_.kind = Tok::Semi; return;
        case ':': tok_.kind = Tok::Colon; return;
        case '.': tok_.kind = Tok::Dot; return;
        case '/': tok_.kind = Tok::Slash; return;
        case '=': tok_.kind = Tok::Eq; return;
        case '+': tok_.kind = Tok::Plus; return;
        case '-': tok_.kind = Tok::Minus; return;
        case '*': tok_.kind = Tok::Star; return;
        case '<':
            if (pos_ < text_.size() && text_[pos_] == '=') {
                bump();
                tok_.kind = Tok::Leq;
            } else {
                tok_.kind = Tok::Lt;
            }
            return;
        default:
            throw ParseError(tok_.line, tok_.column, std::string("unexpected character '") + c + "'");
        }
    }

    static Tok keyword(const std::string& s) {
        if (s == "def") return Tok::KwDef;
        if (s == "forall") return Tok::KwForall;
        if (s == "pforall") return Tok::KwPforall;
        if (s == "at") return Tok::KwAt;
        if (s == "top") return Tok::KwTop;
        if (s == "true") return Tok::KwTrue;
        if (s == "false") return Tok::KwFalse;
        return Tok::Ident;
    }

    void skip_ws() {
        for (;;) {
            while (pos_ < text_.size() &&
                   std::isspace(static_cast<unsigned char>(text_[pos_])))
                bump();
            // line comments: -- to end of line
            if (pos_ + 1 < text_.size() && text_[pos_] == '-' && text_[pos_ + 1] == '-') {
                while (pos_ < text_.size() && text_[pos_] != '\n') bump();
                continue;
            }
            return;
        }
    }

    void bump() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string text_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

struct VarOccurrence {
    std::string name;
    int line;
    int column;
};

class Parser {
public:
    explicit Parser(std::string text) : lex_(std::move(text)) {}

    SourceProgram parse_program() {
        SourceProgram out;
        while (lex_.peek().kind != Tok::Eof) parse_definition(out);
        return out;
    }

    Expr parse_single_expr() {
        body_vars_.clear();
        Expr e = parse_expr();
        expect(Tok::Eof, "end of input");
        for (const auto& v : body_vars_)
            throw ParseError(v.line, v.column, "free variable " + v.name + " in expression");
        return e;
    }

private:
    // ---- definitions ------------------------------------------------------

    void parse_definition(SourceProgram& out) {
        Token first = lex_.peek();

        Quantifier quant = Quantifier::Ground;
        std::vector<std::string> qvars;
        if (first.kind == Tok::KwForall || first.kind == Tok::KwPforall) {
            quant = first.kind == Tok::KwForall ? Quantifier::BQ : Quantifier::PUQ;
            lex_.next();
            qvars.push_back(expect(Tok::Ident, "quantified variable").text);
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                qvars.push_back(expect(Tok::Ident, "quantified variable").text);
            }
            expect(Tok::Dot, "'.' after quantified variables");
        }

        bool located = false;
        LocationPath path;
        if (lex_.peek().kind == Tok::KwAt) {
            lex_.next();
            located = true;
            path = parse_path(/*allow_patterns=*/true);
            expect(Tok::Colon, "':' after location path");
        }

        expect(Tok::KwDef, "'def'");
        Token head = expect(Tok::Ident, "function name");
        if (is_builtin(head.text))
            throw ParseError(head.line, head.column,
                             "cannot define builtin function " + head.text);

        expect(Tok::LParen, "'('");
        Clause clause;
        clause.head = head.text;
        if (lex_.peek().kind != Tok::RParen) {
            clause.params.push_back(parse_pattern());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                clause.params.push_back(parse_pattern());
            }
        }
        expect(Tok::RParen, "')'");
        expect(Tok::Eq, "'='");
        body_vars_.clear();
        clause.body = parse_expr();
        expect(Tok::Semi, "';'");

        // linear head patterns
        std::set<std::string> head_vars;
        for (const auto& p : clause.params) {
            if (p.kind != Pattern::Kind::Var && p.kind != Pattern::Kind::Succ) continue;
            if (!head_vars.insert(p.name).second)
                throw ParseError(head.line, head.column,
                                 "pattern variable " + p.name + " repeated in head of " +
                                     head.text);
        }

        std::set<std::string> bound = head_vars;
        if (located)
            for (const auto& seg : path.segments)
                if (seg.pattern_index) bound.insert(seg.pattern_index->name);

        for (const auto& v : body_vars_)
            if (!bound.count(v.name))
                throw ParseError(v.line, v.column, "unbound variable " + v.name);

        if (quant == Quantifier::Ground) {
            if (!bound.empty())
                throw ParseError(first.line, first.column,
                                 "unquantified definition of " + head.text +
                                     " has pattern variables; add forall or pforall");
        } else {
            std::set<std::string> declared(qvars.begin(), qvars.end());
            if (declared.size() != qvars.size())
                throw ParseError(first.line, first.column, "duplicate quantified variable");
            if (declared != bound)
                throw ParseError(first.line, first.column,
                                 "quantified variables must be exactly the pattern variables of " +
                                     head.text);
        }

        out.origins.push_back(DefOrigin{first.line, first.column});

        if (!located) {
            Definition d;
            d.quant = quant;
            d.vars = qvars;
            d.clause = std::move(clause);
            out.program.defs.push_back(std::move(d));
            return;
        }

        if (path.concrete()) {
            Definition d;
            d.quant = quant;
            d.vars = qvars;
            d.clause = std::move(clause);
            out.store.ensure(path).defs.defs.push_back(std::move(d));
            return;
        }

        ClassEntry entry;
        entry.path = std::move(path);
        entry.quant = quant;
        entry.vars = qvars;
        entry.clause = std::move(clause);
        out.store.class_entries.push_back(std::move(entry));
    }

    Pattern parse_pattern() {
        Token t = lex_.next();
        switch (t.kind) {
        case Tok::Integer:
            return Pattern::lit_int(t.ival);
        case Tok::KwTrue:
            return Pattern::lit_bool(true);
        case Tok::KwFalse:
            return Pattern::lit_bool(false);
        case Tok::Ident: {
            if (lex_.peek().kind == Tok::Plus) {
                lex_.next();
                Token k = expect(Tok::Integer, "offset after '+'");
                if (k.ival < 1)
                    throw ParseError(k.line, k.column, "pattern offset must be at least 1");
                return Pattern::succ(t.text, k.ival);
            }
            return Pattern::var(t.text);
        }
        default:
            throw ParseError(t.line, t.column, "expected a pattern");
        }
    }

    LocationPath parse_path(bool allow_patterns) {
        LocationPath path;
        expect(Tok::Slash, "'/'");
        for (;;) {
            Segment seg;
            seg.name = expect(Tok::Ident, "path segment name").text;
            if (lex_.peek().kind == Tok::LBracket) {
                lex_.next();
                Token t = lex_.next();
                switch (t.kind) {
                case Tok::Integer:
                    seg.const_index = Constant::integer(t.ival);
                    break;
                case Tok::KwTrue:
                    seg.const_index = Constant::boolean(true);
                    break;
                case Tok::KwFalse:
                    seg.const_index = Constant::boolean(false);
                    break;
                case Tok::Ident: {
                    if (!allow_patterns)
                        throw ParseError(t.line, t.column,
                                         "variable index not allowed in this path");
                    if (lex_.peek().kind == Tok::Plus) {
                        lex_.next();
                        Token k = expect(Tok::Integer, "offset after '+'");
                        if (k.ival < 1)
                            throw ParseError(k.line, k.column,
                                             "pattern offset must be at least 1");
                        seg.pattern_index = Pattern::succ(t.text, k.ival);
                    } else {
                        seg.pattern_index = Pattern::var(t.text);
                    }
                    note_var(t);
                    break;
                }
                default:
                    throw ParseError(t.line, t.column, "expected a path index");
                }
                expect(Tok::RBracket, "']'");
            }
            path.segments.push_back(std::move(seg));
            if (lex_.peek().kind != Tok::Slash) break;
            lex_.next();
        }
        return path;
    }

    // ---- expressions ------------------------------------------------------
    // expr := sum (("="|"<"|"<=") sum)?   comparisons are non-associative
    // sum  := term (("+"|"-") term)*
    // term := factor ("*" factor)*

    Expr parse_expr() {
        Expr lhs = parse_sum();
        Tok k = lex_.peek().kind;
        if (k == Tok::Eq || k == Tok::Lt || k == Tok::Leq) {
            lex_.next();
            Expr rhs = parse_sum();
            const char* name = k == Tok::Eq ? "eq" : k == Tok::Lt ? "lt" : "leq";
            return Expr::call(name, {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Expr parse_sum() {
        Expr lhs = parse_term();
        for (;;) {
            Tok k = lex_.peek().kind;
            if (k != Tok::Plus && k != Tok::Minus) return lhs;
            lex_.next();
            Expr rhs = parse_term();
            lhs = Expr::call(k == Tok::Plus ? "add" : "sub", {std::move(lhs), std::move(rhs)});
        }
    }

    Expr parse_term() {
        Expr lhs = parse_factor();
        while (lex_.peek().kind == Tok::Star) {
            lex_.next();
            Expr rhs = parse_factor();
            lhs = Expr::call("mul", {std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    Expr parse_factor() {
        Token t = lex_.peek();
        switch (t.kind) {
        case Tok::Integer:
            lex_.next();
            return Expr::constant(Constant::integer(t.ival));
        case Tok::Minus: {
            lex_.next();
            Token k = expect(Tok::Integer, "integer after '-'");
            return Expr::constant(Constant::integer(-k.ival));
        }
        case Tok::KwTrue:
            lex_.next();
            return Expr::constant(Constant::boolean(true));
        case Tok::KwFalse:
            lex_.next();
            return Expr::constant(Constant::boolean(false));
        case Tok::KwTop:
            lex_.next();
            return Expr::top();
        case Tok::LParen: {
            lex_.next();
            Expr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        case Tok::Ident: {
            lex_.next();
            if (lex_.peek().kind == Tok::LParen) {
                lex_.next();
                std::vector<Expr> args = parse_args();
                return Expr::call(t.text, std::move(args));
            }
            note_var(t);
            return Expr::var(t.text);
        }
        case Tok::Slash: {
            LocationPath path = parse_path(/*allow_patterns=*/true);
            expect(Tok::Dot, "'.' after location path");
            Token method = expect(Tok::Ident, "method name");
            expect(Tok::LParen, "'(' after method name");
            std::vector<Expr> args = parse_args();
            return Expr::located_call(std::move(path), method.text, std::move(args));
        }
        default:
            throw ParseError(t.line, t.column, "expected an expression");
        }
    }

    std::vector<Expr> parse_args() {
        std::vector<Expr> args;
        if (lex_.peek().kind != Tok::RParen) {
            args.push_back(parse_expr());
            while (lex_.peek().kind == Tok::Comma) {
                lex_.next();
                args.push_back(parse_expr());
            }
        }
        expect(Tok::RParen, "')'");
        return args;
    }

    // ---- helpers ----------------------------------------------------------

    Token expect(Tok kind, const std::string& what) {
        Token t = lex_.next();
        if (t.kind != kind)
            throw ParseError(t.line, t.column, "expected " + what);
        return t;
    }

    void note_var(const Token& t) { body_vars_.push_back({t.text, t.line, t.column}); }

    Lexer lex_;
    std::vector<VarOccurrence> body_vars_;
};

}  // namespace detail

/// Parses a whole source file (flat and located definitions).
inline SourceProgram parse_program(const std::string& text) {
    return detail::Parser(text).parse_program();
}

/// Parses one closed expression, e.g. REPL input.
inline Expr parse_expr(const std::string& text) {
    return detail::Parser(text).parse_single_expr();
}

}  // namespace puq

#endif  // PUQ_PARSE_HPP
