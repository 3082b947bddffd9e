#pragma once

#include <stdexcept>
#include <string>

namespace ualg {

enum class ErrorCode {
    UnknownSymbol,
    ArityMismatch,
    VariableOutOfRange,
    SignatureMismatch,
    SizeOverflow,
    NotACongruence,
    NotClosed,
    SizeMismatch,
    SearchBudgetExceeded,
    NotMember,
    NotUnique,
    NotCovered,
    TrivialAlgebra,
    UnknownKey,
    BadParams,
    InvalidArgument,
};

const char* error_code_name(ErrorCode code);

// Library error. `code` distinguishes budget/cap exhaustion (exit code 2 in
// the CLI) from input and usage errors (exit code 1).
struct Error : std::runtime_error {
    ErrorCode code;
    Error(ErrorCode c, const std::string& msg)
        : std::runtime_error(std::string(error_code_name(c)) + ": " + msg), code(c) {}
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
    throw Error(code, msg);
}

inline bool is_budget_error(ErrorCode code) {
    return code == ErrorCode::SizeOverflow || code == ErrorCode::SearchBudgetExceeded;
}

}  // namespace ualg
