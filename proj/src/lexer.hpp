#pragma once

// Tokenizer shared by the instance, program and constraint readers.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qacause::detail {

enum class Tok {
    Ident,      // [A-Za-z0-9_]+
    Quoted,     // "..." or '...'
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Bang,       // '!' not followed by '='
    Neq,        // '!=' or '≠'
    LeftArrow,  // '<-', ':-' or '←'
    RightArrow, // '->' or '→'
    Colon,
    Semicolon,
    At,
    Equals,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text);

std::string_view describe(Tok kind);

// Cursor over a token vector with error helpers that carry source positions.
class TokenStream {
public:
    explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

    const Token& peek(std::size_t ahead = 0) const;
    bool at(Tok kind) const { return peek().kind == kind; }
    bool at_end() const { return at(Tok::End); }
    const Token& next();
    bool accept(Tok kind);
    const Token& expect(Tok kind, std::string_view context);
    [[noreturn]] void fail(const Token& where, const std::string& message) const;

private:
    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
};

bool is_plain_identifier(std::string_view s);

// Renders a constant bare when it lexes as an identifier, quoted otherwise.
std::string quote_constant(std::string_view s);

} // namespace qacause::detail
