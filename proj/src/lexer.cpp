#include "lexer.hpp"

#include "qacause/error.hpp"

#include <cctype>

namespace qacause::detail {

namespace {

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

} // namespace

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0, line = 1, col = 1;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
            ++i;
        }
    };
    auto starts = [&](std::string_view s) { return text.substr(i, s.size()) == s; };
    auto emit = [&](Tok kind, std::size_t len) {
        out.push_back({kind, std::string(text.substr(i, len)), line, col});
        advance(len);
    };

    while (i < text.size()) {
        const char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
        } else if (c == '#' || c == '%') {
            while (i < text.size() && text[i] != '\n')
                advance(1);
        } else if (ident_char(c)) {
            std::size_t j = i;
            while (j < text.size() && ident_char(text[j]))
                ++j;
            emit(Tok::Ident, j - i);
        } else if (c == '"' || c == '\'') {
            const std::size_t l0 = line, c0 = col;
            std::string value;
            advance(1);
            while (i < text.size() && text[i] != c) {
                if (text[i] == '\\' && i + 1 < text.size())
                    advance(1);
                if (text[i] == '\n')
                    throw Error(ErrorCode::SyntaxError, "unterminated quoted constant", l0, c0);
                value.push_back(text[i]);
                advance(1);
            }
            if (i >= text.size())
                throw Error(ErrorCode::SyntaxError, "unterminated quoted constant", l0, c0);
            advance(1);
            out.push_back({Tok::Quoted, std::move(value), l0, c0});
        } else if (starts("!=")) {
            emit(Tok::Neq, 2);
        } else if (starts("≠")) {
            emit(Tok::Neq, 3);
        } else if (starts("<-") || starts(":-")) {
            emit(Tok::LeftArrow, 2);
        } else if (starts("←")) {
            emit(Tok::LeftArrow, 3);
        } else if (starts("->")) {
            emit(Tok::RightArrow, 2);
        } else if (starts("→")) {
            emit(Tok::RightArrow, 3);
        } else {
            Tok kind;
            switch (c) {
            case '(': kind = Tok::LParen; break;
            case ')': kind = Tok::RParen; break;
            case '[': kind = Tok::LBracket; break;
            case ']': kind = Tok::RBracket; break;
            case ',': kind = Tok::Comma; break;
            case '.': kind = Tok::Dot; break;
            case '!': kind = Tok::Bang; break;
            case ':': kind = Tok::Colon; break;
            case ';': kind = Tok::Semicolon; break;
            case '@': kind = Tok::At; break;
            case '=': kind = Tok::Equals; break;
            default:
                throw Error(ErrorCode::SyntaxError,
                            std::string("unexpected character '") + c + "'", line, col);
            }
            emit(kind, 1);
        }
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

std::string_view describe(Tok kind) {
    switch (kind) {
    case Tok::Ident: return "identifier";
    case Tok::Quoted: return "quoted constant";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBracket: return "'['";
    case Tok::RBracket: return "']'";
    case Tok::Comma: return "','";
    case Tok::Dot: return "'.'";
    case Tok::Bang: return "'!'";
    case Tok::Neq: return "'!='";
    case Tok::LeftArrow: return "'<-'";
    case Tok::RightArrow: return "'->'";
    case Tok::Colon: return "':'";
    case Tok::Semicolon: return "';'";
    case Tok::At: return "'@'";
    case Tok::Equals: return "'='";
    case Tok::End: return "end of input";
    }
    return "token";
}

const Token& TokenStream::peek(std::size_t ahead) const {
    const std::size_t k = pos_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
}

const Token& TokenStream::next() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size())
        ++pos_;
    return t;
}

bool TokenStream::accept(Tok kind) {
    if (!at(kind))
        return false;
    next();
    return true;
}

const Token& TokenStream::expect(Tok kind, std::string_view context) {
    if (!at(kind)) {
        fail(peek(), "expected " + std::string(describe(kind)) + " " + std::string(context) +
                         ", found " + std::string(describe(peek().kind)));
    }
    return next();
}

void TokenStream::fail(const Token& where, const std::string& message) const {
    throw Error(ErrorCode::SyntaxError, message, where.line, where.column);
}

bool is_plain_identifier(std::string_view s) {
    if (s.empty())
        return false;
    for (char c : s)
        if (!ident_char(c))
            return false;
    return true;
}

std::string quote_constant(std::string_view s) {
    if (is_plain_identifier(s))
        return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

} // namespace qacause::detail
