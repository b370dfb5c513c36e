#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace singscat {

enum class ErrorCode {
    InvalidArgument,
    InvalidExponent,
    UndefinedRegime,
    MissingChoice,
    NonPositiveEnergy,
    NoScatteringState,
    ChainOrder,
    NoConvergence,
    Overflow,
    InsufficientData,
    BracketError,
};

/// snake_case tag used in JSON error documents and CSV flags.
std::string_view error_tag(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace singscat
