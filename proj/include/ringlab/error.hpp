#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ringlab {

enum class ErrorCode {
    DimensionMismatch,
    AlgebraMismatch,
    NonPrimeModulus,
    AssociativityViolation,
    UnitViolation,
    NotIdempotent,
    UnknownPreset,
    OutOfRange,
    CapExceeded,
    NotASubmodule,
    SumNotWhole,
    NotASummand,
    PreconditionViolated,
    NotRegular,
    PowersNotRegular,
    NotNilpotentAtThisLevel,
    VerificationFailure,
    ParseError,
};

std::string_view to_string(ErrorCode code) noexcept;

// Single exception type for the library; the code carries the failure class.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code), detail_(what) {}

    ErrorCode code() const noexcept { return code_; }
    // The message without the code prefix.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace ringlab
