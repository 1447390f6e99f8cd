#include "geoproof/parse.hpp"

#include <cctype>
#include <cstdlib>

namespace geoproof::parse {

Lexer::Lexer(std::string_view src) : src_(src) { advance(); }

Token Lexer::next() {
    Token t = tok_;
    advance();
    return t;
}

void Lexer::expect_punct(std::string_view p) {
    if (!at_punct(p)) fail("expected '" + std::string(p) + "'");
    advance();
}

void Lexer::fail(const std::string& msg) const {
    std::string got = tok_.kind == TokKind::End ? "end of input" : "'" + tok_.text + "'";
    if (tok_.kind == TokKind::Number) got = "'" + render_number(tok_.num) + "'";
    throw ParseError(msg + ", got " + got, tok_.line, tok_.col);
}

void Lexer::advance() {
    auto cur = [&]() -> int { return pos_ < src_.size() ? (unsigned char)src_[pos_] : -1; };
    auto bump = [&] {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    };
    for (;;) {
        while (pos_ < src_.size() && std::isspace(cur())) bump();
        if (cur() == '%') {
            while (pos_ < src_.size() && src_[pos_] != '\n') bump();
            continue;
        }
        break;
    }
    tok_ = Token{};
    tok_.line = line_;
    tok_.col = col_;
    if (pos_ >= src_.size()) {
        tok_.kind = TokKind::End;
        return;
    }
    int c = cur();
    if (std::isalpha(c) || c == '_') {
        size_t start = pos_;
        while (pos_ < src_.size() && (std::isalnum(cur()) || cur() == '_')) bump();
        tok_.kind = TokKind::Ident;
        tok_.text = std::string(src_.substr(start, pos_ - start));
        return;
    }
    if (std::isdigit(c)) {
        size_t start = pos_;
        while (pos_ < src_.size() && std::isdigit(cur())) bump();
        if (cur() == '.' && pos_ + 1 < src_.size() &&
            std::isdigit((unsigned char)src_[pos_ + 1])) {
            bump();
            while (pos_ < src_.size() && std::isdigit(cur())) bump();
        }
        tok_.kind = TokKind::Number;
        tok_.num = std::strtod(std::string(src_.substr(start, pos_ - start)).c_str(), nullptr);
        return;
    }
    if (c == '"') {
        bump();
        size_t start = pos_;
        while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') bump();
        if (cur() != '"') throw ParseError("unterminated string", tok_.line, tok_.col);
        tok_.kind = TokKind::String;
        tok_.text = std::string(src_.substr(start, pos_ - start));
        bump();
        return;
    }
    // Two-character comparison punctuators first.
    if ((c == '<' || c == '>') && pos_ + 1 < src_.size() && src_[pos_ + 1] == '=') {
        tok_.kind = TokKind::Punct;
        tok_.text = std::string(1, (char)c) + "=";
        bump();
        bump();
        return;
    }
    static const std::string singles = "()[]{},.~<>+-*/";
    if (singles.find((char)c) != std::string::npos) {
        tok_.kind = TokKind::Punct;
        tok_.text = std::string(1, (char)c);
        bump();
        return;
    }
    throw ParseError("unexpected character '" + std::string(1, (char)c) + "'", line_, col_);
}

static Term parse_additive(Lexer& lx, bool allow_vars);

static Term parse_primary(Lexer& lx, bool allow_vars) {
    if (lx.at(TokKind::Number)) return Term::number(lx.next().num);
    if (lx.at_punct("-")) {
        auto at = lx.peek();
        lx.next();
        Term inner = parse_primary(lx, allow_vars);
        if (inner.is_number()) return Term::number(-inner.num);
        if (!allow_vars) throw ParseError("negation needs a number here", at.line, at.col);
        return Term::compound("-", {Term::number(0), std::move(inner)});
    }
    if (lx.at_punct("(") && allow_vars) {
        lx.next();
        Term inner = parse_additive(lx, allow_vars);
        lx.expect_punct(")");
        return inner;
    }
    if (lx.at_punct("[")) {
        lx.next();
        std::vector<Term> elems;
        if (!lx.at_punct("]")) {
            elems.push_back(parse_term(lx, allow_vars));
            while (lx.at_punct(",")) {
                lx.next();
                elems.push_back(parse_term(lx, allow_vars));
            }
        }
        lx.expect_punct("]");
        return Term::list(std::move(elems));
    }
    if (lx.at(TokKind::Ident)) {
        Token id = lx.next();
        bool upper = std::isupper((unsigned char)id.text[0]) || id.text[0] == '_';
        if (upper) {
            if (!allow_vars)
                throw ParseError("uppercase-initial '" + id.text +
                                     "' reads as a variable; constants start lowercase",
                                 id.line, id.col);
            if (lx.at_punct("("))
                throw ParseError("variable '" + id.text + "' cannot take arguments", id.line,
                                 id.col);
            return Term::var(id.text);
        }
        if (lx.at_punct("(")) {
            lx.next();
            std::vector<Term> args;
            if (!lx.at_punct(")")) {
                args.push_back(parse_term(lx, allow_vars));
                while (lx.at_punct(",")) {
                    lx.next();
                    args.push_back(parse_term(lx, allow_vars));
                }
            }
            lx.expect_punct(")");
            return Term::compound(id.text, std::move(args));
        }
        return Term::atom(id.text);
    }
    lx.fail("expected a term");
}

static Term parse_multiplicative(Lexer& lx, bool allow_vars) {
    Term lhs = parse_primary(lx, allow_vars);
    while (allow_vars && (lx.at_punct("*") || lx.at_punct("/"))) {
        std::string op = lx.next().text;
        Term rhs = parse_primary(lx, allow_vars);
        lhs = Term::compound(op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
}

static Term parse_additive(Lexer& lx, bool allow_vars) {
    Term lhs = parse_multiplicative(lx, allow_vars);
    while (allow_vars && (lx.at_punct("+") || lx.at_punct("-"))) {
        std::string op = lx.next().text;
        Term rhs = parse_multiplicative(lx, allow_vars);
        lhs = Term::compound(op, {std::move(lhs), std::move(rhs)});
    }
    return lhs;
}

Term parse_term(Lexer& lx, bool allow_vars) { return parse_additive(lx, allow_vars); }

Term parse_term_text(const std::string& text, bool allow_vars) {
    Lexer lx(text);
    Term t = parse_term(lx, allow_vars);
    if (!lx.at(TokKind::End)) lx.fail("trailing input after term");
    return t;
}

}  // namespace geoproof::parse
