#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "geoproof/term.hpp"

namespace geoproof::parse {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, int line, int col)
        : std::runtime_error(what), line(line), col(col) {}
    int line, col;
};

enum class TokKind { Ident, Number, String, Punct, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;  // identifier, punctuator spelling, or string body
    double num = 0.0;
    int line = 1, col = 1;
};

// Shared tokenizer for problem files and rule files. `%` starts a comment
// that runs to end of line. A '.' is a fact terminator unless it continues
// a number.
class Lexer {
public:
    explicit Lexer(std::string_view src);

    const Token& peek() const { return tok_; }
    Token next();
    bool at(TokKind k) const { return tok_.kind == k; }
    bool at_punct(std::string_view p) const {
        return tok_.kind == TokKind::Punct && tok_.text == p;
    }
    bool at_ident(std::string_view id) const {
        return tok_.kind == TokKind::Ident && tok_.text == id;
    }
    /// Consumes the expected punctuator or throws.
    void expect_punct(std::string_view p);
    [[noreturn]] void fail(const std::string& msg) const;

private:
    void advance();
    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
    Token tok_;
};

/// Parses one term. With allow_vars, uppercase-initial identifiers become
/// variables and infix arithmetic (+ - * /, sqrt(...), parentheses) is
/// accepted; without it both are rejected, matching problem-file rules.
Term parse_term(Lexer& lx, bool allow_vars);

/// Convenience wrapper: the whole text must be a single term.
Term parse_term_text(const std::string& text, bool allow_vars = false);

}  // namespace geoproof::parse
