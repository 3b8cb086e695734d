#pragma once

#include "lexer.hpp"
#include "qacause/datalog.hpp"

namespace qacause::detail {

struct PositionedAtom {
    Atom atom;
    std::size_t line, column;
};

// A relational atom or an inequality `s != t`.
PositionedAtom read_literal(TokenStream& ts);

} // namespace qacause::detail
