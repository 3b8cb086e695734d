#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qacause {

enum class ErrorCode {
    // text input problems
    SyntaxError,
    UnsafeRule,
    ArityConflict,
    // domain problems
    UnknownPredicate,
    ArityMismatch,
    UnknownTupleId,
    SchemaMismatch,
    NotAnAnswer,
    ExogenousTuple,
    NonBooleanProgram,
    NoDiagnosis,
    OverlappingHypotheses,
    InconsistentInstance,
    NotACQ,
    NotAKeySet,
    InvalidArgument,
};

std::string_view to_string(ErrorCode code);

/// True for the codes raised while reading program, instance or constraint text.
bool is_parse_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message);
    Error(ErrorCode code, const std::string& message, std::size_t line, std::size_t column);

    ErrorCode code() const noexcept { return code_; }
    // 1-based; zero when the error has no source position
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    ErrorCode code_;
    std::size_t line_ = 0;
    std::size_t column_ = 0;
};

} // namespace qacause
