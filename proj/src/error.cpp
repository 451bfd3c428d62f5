#include "ringlab/error.hpp"

namespace ringlab {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
        case ErrorCode::NonPrimeModulus: return "NonPrimeModulus";
        case ErrorCode::AssociativityViolation: return "AssociativityViolation";
        case ErrorCode::UnitViolation: return "UnitViolation";
        case ErrorCode::NotIdempotent: return "NotIdempotent";
        case ErrorCode::UnknownPreset: return "UnknownPreset";
        case ErrorCode::OutOfRange: return "OutOfRange";
        case ErrorCode::CapExceeded: return "CapExceeded";
        case ErrorCode::NotASubmodule: return "NotASubmodule";
        case ErrorCode::SumNotWhole: return "SumNotWhole";
        case ErrorCode::NotASummand: return "NotASummand";
        case ErrorCode::PreconditionViolated: return "PreconditionViolated";
        case ErrorCode::NotRegular: return "NotRegular";
        case ErrorCode::PowersNotRegular: return "PowersNotRegular";
        case ErrorCode::NotNilpotentAtThisLevel: return "NotNilpotentAtThisLevel";
        case ErrorCode::VerificationFailure: return "VerificationFailure";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace ringlab
