#include "qacause/error.hpp"

namespace qacause {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnsafeRule: return "UnsafeRule";
    case ErrorCode::ArityConflict: return "ArityConflict";
    case ErrorCode::UnknownPredicate: return "UnknownPredicate";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::UnknownTupleId: return "UnknownTupleId";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::NotAnAnswer: return "NotAnAnswer";
    case ErrorCode::ExogenousTuple: return "ExogenousTuple";
    case ErrorCode::NonBooleanProgram: return "NonBooleanProgram";
    case ErrorCode::NoDiagnosis: return "NoDiagnosis";
    case ErrorCode::OverlappingHypotheses: return "OverlappingHypotheses";
    case ErrorCode::InconsistentInstance: return "InconsistentInstance";
    case ErrorCode::NotACQ: return "NotACQ";
    case ErrorCode::NotAKeySet: return "NotAKeySet";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_parse_error(ErrorCode code) {
    return code == ErrorCode::SyntaxError || code == ErrorCode::UnsafeRule ||
           code == ErrorCode::ArityConflict;
}

namespace {

std::string with_position(const std::string& message, std::size_t line, std::size_t column) {
    return std::to_string(line) + ":" + std::to_string(column) + ": " + message;
}

} // namespace

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error::Error(ErrorCode code, const std::string& message, std::size_t line, std::size_t column)
    : std::runtime_error(std::string(to_string(code)) + ": " + with_position(message, line, column)),
      code_(code), line_(line), column_(column) {}

} // namespace qacause
