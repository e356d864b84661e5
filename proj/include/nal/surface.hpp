#pragma once

// Concrete syntax for terms and formulas.
//
//   keywords     true false and or not forall exists says on
//   delegation   t1 =>> t2            t1 =>> t2 on (x : phi)
//   groups       {x : phi}            subprincipal  t1.t2
//   quantifiers  forall x. phi        exists x. phi
//
// Precedence, tightest first: `.` (left), `=`, application, `not`, `says`
// (right), `and` (left), `or` (left), `=>` (right), `=>>`, quantifiers.
// Variables are bare lowercase identifiers; symbols are always applied.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nal/ast.hpp"

namespace nal {

struct SourceSpan {
    std::size_t start = 0;
    std::size_t end = 0;
};

class ParseError : public std::runtime_error {
public:
    ParseError(std::string tag, std::string message, SourceSpan span, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          tag_(std::move(tag)),
          message_(std::move(message)),
          span_(span),
          line_(line),
          column_(column) {}

    /// "syntax", "unknown-symbol" or "arity".
    const std::string& tag() const noexcept { return tag_; }
    const std::string& message() const noexcept { return message_; }
    SourceSpan span() const noexcept { return span_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string tag_;
    std::string message_;
    SourceSpan span_;
    std::size_t line_;
    std::size_t column_;
};

inline bool is_keyword(std::string_view s) {
    static constexpr std::string_view kws[] = {"true", "false", "and",  "or", "not",
                                               "forall", "exists", "says", "on"};
    for (auto k : kws)
        if (k == s) return true;
    return false;
}

namespace detail {

enum class Tok {
    Ident,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Dot,
    Eq,
    Implies,
    Delegates,
    True,
    False,
    And,
    Or,
    Not,
    Forall,
    Exists,
    Says,
    On,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceSpan span;
};

inline const char* tok_name(Tok t) {
    switch (t) {
        case Tok::Ident: return "identifier";
        case Tok::LParen: return "'('";
        case Tok::RParen: return "')'";
        case Tok::LBrace: return "'{'";
        case Tok::RBrace: return "'}'";
        case Tok::Comma: return "','";
        case Tok::Colon: return "':'";
        case Tok::Dot: return "'.'";
        case Tok::Eq: return "'='";
        case Tok::Implies: return "'=>'";
        case Tok::Delegates: return "'=>>'";
        case Tok::True: return "'true'";
        case Tok::False: return "'false'";
        case Tok::And: return "'and'";
        case Tok::Or: return "'or'";
        case Tok::Not: return "'not'";
        case Tok::Forall: return "'forall'";
        case Tok::Exists: return "'exists'";
        case Tok::Says: return "'says'";
        case Tok::On: return "'on'";
        case Tok::End: return "end of input";
    }
    return "?";
}

class Parser {
public:
    Parser(std::string_view text, const Signature& sig) : text_(text), sig_(sig) { lex(); }

    using Expr = std::variant<Term, Formula>;

    Formula formula() {
        std::size_t start = peek().span.start;
        Expr e = top();
        expect(Tok::End);
        return as_formula(e, start);
    }

    Term term() {
        std::size_t start = peek().span.start;
        Expr e = top();
        expect(Tok::End);
        return as_term(e, start);
    }

private:
    std::string_view text_;
    const Signature& sig_;
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    [[noreturn]] void error(const std::string& tag, const std::string& msg, SourceSpan span) const {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i < span.start && i < text_.size(); ++i) {
            unsigned char c = static_cast<unsigned char>(text_[i]);
            if (c == '\n') {
                ++line;
                col = 1;
            } else if ((c & 0xC0) != 0x80) {
                ++col;
            }
        }
        throw ParseError(tag, msg, span, line, col);
    }

    static bool ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool ident_char(char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

    void lex() {
        std::size_t i = 0, n = text_.size();
        while (i < n) {
            char c = text_[i];
            if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
                ++i;
                continue;
            }
            std::size_t start = i;
            auto push = [&](Tok k, std::size_t len) {
                toks_.push_back({k, std::string(text_.substr(start, len)), {start, start + len}});
                i = start + len;
            };
            if (ident_start(c)) {
                std::size_t j = i;
                while (j < n && ident_char(text_[j])) ++j;
                std::string_view word = text_.substr(i, j - i);
                Tok k = Tok::Ident;
                if (word == "true") k = Tok::True;
                else if (word == "false") k = Tok::False;
                else if (word == "and") k = Tok::And;
                else if (word == "or") k = Tok::Or;
                else if (word == "not") k = Tok::Not;
                else if (word == "forall") k = Tok::Forall;
                else if (word == "exists") k = Tok::Exists;
                else if (word == "says") k = Tok::Says;
                else if (word == "on") k = Tok::On;
                push(k, j - i);
                continue;
            }
            switch (c) {
                case '(': push(Tok::LParen, 1); continue;
                case ')': push(Tok::RParen, 1); continue;
                case '{': push(Tok::LBrace, 1); continue;
                case '}': push(Tok::RBrace, 1); continue;
                case ',': push(Tok::Comma, 1); continue;
                case ':': push(Tok::Colon, 1); continue;
                case '.': push(Tok::Dot, 1); continue;
                case '=':
                    if (text_.substr(i, 3) == "=>>") push(Tok::Delegates, 3);
                    else if (text_.substr(i, 2) == "=>") push(Tok::Implies, 2);
                    else push(Tok::Eq, 1);
                    continue;
                default: {
                    std::size_t len = 1;
                    unsigned char uc = static_cast<unsigned char>(c);
                    if (uc >= 0x80)
                        while (start + len < n && (static_cast<unsigned char>(text_[start + len]) & 0xC0) == 0x80)
                            ++len;
                    error("syntax", "unexpected character '" + std::string(text_.substr(start, len)) + "'",
                          {start, start + len});
                }
            }
        }
        toks_.push_back({Tok::End, "", {n, n}});
    }

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    bool accept(Tok k) {
        if (peek().kind != k) return false;
        ++pos_;
        return true;
    }
    const Token& expect(Tok k) {
        if (peek().kind != k)
            error("syntax", std::string("expected ") + tok_name(k) + ", found " + describe(peek()), peek().span);
        return toks_[pos_++];
    }
    static std::string describe(const Token& t) {
        if (t.kind == Tok::End) return tok_name(t.kind);
        return "'" + t.text + "'";
    }

    SourceSpan span_from(std::size_t start) const {
        std::size_t end = pos_ > 0 ? toks_[pos_ - 1].span.end : start;
        return {start, std::max(start, end)};
    }

    Formula as_formula(const Expr& e, std::size_t start) const {
        if (auto f = std::get_if<Formula>(&e)) return *f;
        error("syntax", "expected a formula, found a term", span_from(start));
    }
    Term as_term(const Expr& e, std::size_t start) const {
        if (auto t = std::get_if<Term>(&e)) return *t;
        error("syntax", "expected a term, found a formula", span_from(start));
    }

    Expr top() { return delegation(); }

    Expr delegation() {
        std::size_t start = peek().span.start;
        Expr lhs = implication();
        if (!accept(Tok::Delegates)) return lhs;
        Term delegate = as_term(lhs, start);
        std::size_t rstart = peek().span.start;
        Term delegator = as_term(implication(), rstart);
        if (!accept(Tok::On)) return Formula::speaksfor(delegate, delegator);
        expect(Tok::LParen);
        std::string var = variable_name();
        expect(Tok::Colon);
        std::size_t bstart = peek().span.start;
        Formula body = as_formula(top(), bstart);
        expect(Tok::RParen);
        return Formula::speaksfor_on(delegate, delegator, var, body);
    }

    Expr implication() {
        std::size_t start = peek().span.start;
        Expr lhs = disjunction();
        if (!accept(Tok::Implies)) return lhs;
        Formula a = as_formula(lhs, start);
        std::size_t rstart = peek().span.start;
        Formula b = as_formula(implication(), rstart);
        return Formula::implies(a, b);
    }

    Expr disjunction() {
        std::size_t start = peek().span.start;
        Expr lhs = conjunction();
        while (peek().kind == Tok::Or) {
            Formula a = as_formula(lhs, start);
            ++pos_;
            std::size_t rstart = peek().span.start;
            lhs = Formula::disj(a, as_formula(conjunction(), rstart));
        }
        return lhs;
    }

    Expr conjunction() {
        std::size_t start = peek().span.start;
        Expr lhs = affirmation();
        while (peek().kind == Tok::And) {
            Formula a = as_formula(lhs, start);
            ++pos_;
            std::size_t rstart = peek().span.start;
            lhs = Formula::conj(a, as_formula(affirmation(), rstart));
        }
        return lhs;
    }

    Expr affirmation() {
        std::size_t start = peek().span.start;
        Expr lhs = negation();
        if (!accept(Tok::Says)) return lhs;
        Term principal = as_term(lhs, start);
        std::size_t rstart = peek().span.start;
        return Formula::says(principal, as_formula(affirmation(), rstart));
    }

    Expr negation() {
        if (!accept(Tok::Not)) return equality();
        std::size_t start = peek().span.start;
        return Formula::negate(as_formula(negation(), start));
    }

    Expr equality() {
        std::size_t start = peek().span.start;
        Expr lhs = subprincipal();
        if (!accept(Tok::Eq)) return lhs;
        Term a = as_term(lhs, start);
        std::size_t rstart = peek().span.start;
        return Formula::equals(a, as_term(subprincipal(), rstart));
    }

    Expr subprincipal() {
        std::size_t start = peek().span.start;
        Expr lhs = primary();
        while (peek().kind == Tok::Dot) {
            Term parent = as_term(lhs, start);
            ++pos_;
            std::size_t rstart = peek().span.start;
            lhs = Term::subprincipal(parent, as_term(primary(), rstart));
        }
        return lhs;
    }

    std::string variable_name() {
        const Token& t = expect(Tok::Ident);
        if (!(t.text[0] >= 'a' && t.text[0] <= 'z') && t.text[0] != '_')
            error("syntax", "variable names must start with a lowercase letter: '" + t.text + "'", t.span);
        return t.text;
    }

    Expr primary() {
        const Token& t = peek();
        std::size_t start = t.span.start;
        switch (t.kind) {
            case Tok::True: ++pos_; return Formula::truth();
            case Tok::False: ++pos_; return Formula::falsity();
            case Tok::LParen: {
                ++pos_;
                Expr e = top();
                expect(Tok::RParen);
                return e;
            }
            case Tok::LBrace: {
                ++pos_;
                std::string var = variable_name();
                expect(Tok::Colon);
                std::size_t bstart = peek().span.start;
                Formula body = as_formula(top(), bstart);
                expect(Tok::RBrace);
                return Term::group(var, body);
            }
            case Tok::Forall:
            case Tok::Exists: {
                bool universal = t.kind == Tok::Forall;
                ++pos_;
                std::string var = variable_name();
                expect(Tok::Dot);
                std::size_t bstart = peek().span.start;
                Formula body = as_formula(top(), bstart);
                return universal ? Formula::forall(var, body) : Formula::exists(var, body);
            }
            case Tok::Ident: {
                if (peek(1).kind != Tok::LParen) return Term::variable(variable_name());
                std::string symbol = t.text;
                SourceSpan sym_span = t.span;
                pos_ += 2;
                std::vector<Term> args;
                if (!accept(Tok::RParen)) {
                    do {
                        std::size_t astart = peek().span.start;
                        args.push_back(as_term(top(), astart));
                    } while (accept(Tok::Comma));
                    expect(Tok::RParen);
                }
                SourceSpan whole = span_from(start);
                if (auto it = sig_.functions.find(symbol); it != sig_.functions.end()) {
                    if (it->second != args.size())
                        error("arity", "function '" + symbol + "' expects " + std::to_string(it->second) +
                                           " argument(s), got " + std::to_string(args.size()),
                              whole);
                    return Term::apply(symbol, std::move(args));
                }
                if (auto it = sig_.relations.find(symbol); it != sig_.relations.end()) {
                    if (it->second != args.size())
                        error("arity", "relation '" + symbol + "' expects " + std::to_string(it->second) +
                                           " argument(s), got " + std::to_string(args.size()),
                              whole);
                    return Formula::relation(symbol, std::move(args));
                }
                error("unknown-symbol", "unknown symbol '" + symbol + "'", sym_span);
            }
            default:
                error("syntax", "unexpected " + describe(t), t.span);
        }
    }
};

}  // namespace detail

/// Parses a formula against `sig`. Throws ParseError on syntax, unknown
/// symbol or arity errors.
inline Formula parse_formula(std::string_view text, const Signature& sig) {
    return detail::Parser(text, sig).formula();
}

inline Term parse_term(std::string_view text, const Signature& sig) { return detail::Parser(text, sig).term(); }

// ---------------------------------------------------------------------------
// Rendering

namespace detail {

enum Level : int {
    kQuantifier = 0,
    kDelegation = 1,
    kImplies = 2,
    kOr = 3,
    kAnd = 4,
    kSays = 5,
    kNot = 6,
    kAtom = 7,
};

inline int level_of(const Formula& f) {
    switch (f.kind()) {
        case FormulaKind::Forall:
        case FormulaKind::Exists: return kQuantifier;
        case FormulaKind::Speaksfor:
        case FormulaKind::SpeaksforRestricted: return kDelegation;
        case FormulaKind::Implies: return kImplies;
        case FormulaKind::Or: return kOr;
        case FormulaKind::And: return kAnd;
        case FormulaKind::Says: return kSays;
        case FormulaKind::Not: return kNot;
        default: return kAtom;
    }
}

inline void render(const Formula& f, int context, std::string& out);

inline void render(const Term& t, bool as_child, std::string& out) {
    switch (t.kind()) {
        case TermKind::Variable:
            out += t.name();
            return;
        case TermKind::Application:
            out += t.name();
            out += '(';
            for (std::size_t i = 0; i < t.args().size(); ++i) {
                if (i) out += ", ";
                render(t.args()[i], false, out);
            }
            out += ')';
            return;
        case TermKind::Subprincipal:
            if (as_child) out += '(';
            render(t.args()[0], false, out);
            out += '.';
            render(t.args()[1], true, out);
            if (as_child) out += ')';
            return;
        case TermKind::Group:
            out += '{';
            out += t.name();
            out += " : ";
            render(t.body(), kQuantifier, out);
            out += '}';
            return;
    }
}

inline void render(const Formula& f, int context, std::string& out) {
    int level = level_of(f);
    bool parens = level < context;
    if (parens) out += '(';
    switch (f.kind()) {
        case FormulaKind::True: out += "true"; break;
        case FormulaKind::False: out += "false"; break;
        case FormulaKind::Relation:
            out += f.name();
            out += '(';
            for (std::size_t i = 0; i < f.terms().size(); ++i) {
                if (i) out += ", ";
                render(f.terms()[i], false, out);
            }
            out += ')';
            break;
        case FormulaKind::Equals:
            render(f.terms()[0], false, out);
            out += " = ";
            render(f.terms()[1], false, out);
            break;
        case FormulaKind::And:
            render(f.left(), kAnd, out);
            out += " and ";
            render(f.right(), kSays, out);
            break;
        case FormulaKind::Or:
            render(f.left(), kOr, out);
            out += " or ";
            render(f.right(), kAnd, out);
            break;
        case FormulaKind::Implies:
            render(f.left(), kOr, out);
            out += " => ";
            render(f.right(), kImplies, out);
            break;
        case FormulaKind::Not:
            out += "not ";
            render(f.body(), kNot, out);
            break;
        case FormulaKind::Forall:
        case FormulaKind::Exists:
            out += f.kind() == FormulaKind::Forall ? "forall " : "exists ";
            out += f.name();
            out += ". ";
            render(f.body(), kQuantifier, out);
            break;
        case FormulaKind::Says:
            render(f.terms()[0], false, out);
            out += " says ";
            render(f.body(), kSays, out);
            break;
        case FormulaKind::Speaksfor:
        case FormulaKind::SpeaksforRestricted:
            render(f.terms()[0], false, out);
            out += " =>> ";
            render(f.terms()[1], false, out);
            if (f.kind() == FormulaKind::SpeaksforRestricted) {
                out += " on (";
                out += f.name();
                out += " : ";
                render(f.body(), kQuantifier, out);
                out += ')';
            }
            break;
    }
    if (parens) out += ')';
}

inline void sexpr(const Formula& f, std::string& out);

inline void sexpr(const Term& t, std::string& out) {
    switch (t.kind()) {
        case TermKind::Variable: out += "(var " + t.name() + ")"; return;
        case TermKind::Application:
            out += "(app " + t.name();
            for (const auto& a : t.args()) {
                out += ' ';
                sexpr(a, out);
            }
            out += ')';
            return;
        case TermKind::Subprincipal:
            out += "(sub ";
            sexpr(t.args()[0], out);
            out += ' ';
            sexpr(t.args()[1], out);
            out += ')';
            return;
        case TermKind::Group:
            out += "(group " + t.name() + " ";
            sexpr(t.body(), out);
            out += ')';
            return;
    }
}

inline const char* kind_name(FormulaKind k) {
    switch (k) {
        case FormulaKind::True: return "true";
        case FormulaKind::False: return "false";
        case FormulaKind::Relation: return "rel";
        case FormulaKind::Equals: return "eq";
        case FormulaKind::And: return "and";
        case FormulaKind::Or: return "or";
        case FormulaKind::Implies: return "implies";
        case FormulaKind::Not: return "not";
        case FormulaKind::Forall: return "forall";
        case FormulaKind::Exists: return "exists";
        case FormulaKind::Says: return "says";
        case FormulaKind::Speaksfor: return "speaksfor";
        case FormulaKind::SpeaksforRestricted: return "speaksfor-on";
    }
    return "?";
}

inline void sexpr(const Formula& f, std::string& out) {
    if (f.kind() == FormulaKind::True || f.kind() == FormulaKind::False) {
        out += kind_name(f.kind());
        return;
    }
    out += '(';
    out += kind_name(f.kind());
    if (f.kind() == FormulaKind::Relation || is_binder(f.kind())) out += " " + f.name();
    for (const auto& t : f.terms()) {
        out += ' ';
        sexpr(t, out);
    }
    for (const auto& s : f.subs()) {
        out += ' ';
        sexpr(s, out);
    }
    out += ')';
}

}  // namespace detail

/// Surface syntax with the fewest parentheses the precedence table allows.
inline std::string render(const Formula& f) {
    std::string out;
    detail::render(f, detail::kQuantifier, out);
    return out;
}

inline std::string render(const Term& t) {
    std::string out;
    detail::render(t, false, out);
    return out;
}

inline std::string render(const Sequent& s) {
    std::string out;
    for (std::size_t i = 0; i < s.hyps().size(); ++i) {
        if (i) out += ", ";
        out += render(s.hyps()[i]);
    }
    out += out.empty() ? "|- " : " |- ";
    out += render(s.goal());
    return out;
}

/// Fully bracketed AST dump, e.g. (says (app A) (rel r)).
inline std::string to_sexpr(const Formula& f) {
    std::string out;
    detail::sexpr(f, out);
    return out;
}

inline std::string to_sexpr(const Term& t) {
    std::string out;
    detail::sexpr(t, out);
    return out;
}

}  // namespace nal
