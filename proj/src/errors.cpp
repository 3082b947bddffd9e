#include "ualg/errors.hpp"

namespace ualg {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::UnknownSymbol: return "UnknownSymbol";
        case ErrorCode::ArityMismatch: return "ArityMismatch";
        case ErrorCode::VariableOutOfRange: return "VariableOutOfRange";
        case ErrorCode::SignatureMismatch: return "SignatureMismatch";
        case ErrorCode::SizeOverflow: return "SizeOverflow";
        case ErrorCode::NotACongruence: return "NotACongruence";
        case ErrorCode::NotClosed: return "NotClosed";
        case ErrorCode::SizeMismatch: return "SizeMismatch";
        case ErrorCode::SearchBudgetExceeded: return "SearchBudgetExceeded";
        case ErrorCode::NotMember: return "NotMember";
        case ErrorCode::NotUnique: return "NotUnique";
        case ErrorCode::NotCovered: return "NotCovered";
        case ErrorCode::TrivialAlgebra: return "TrivialAlgebra";
        case ErrorCode::UnknownKey: return "UnknownKey";
        case ErrorCode::BadParams: return "BadParams";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
    }
    return "Error";
}

}  // namespace ualg
