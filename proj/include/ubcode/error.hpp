#pragma once

#include <stdexcept>
#include <string>

namespace ubcode {

enum class ErrorCode {
    Ok = 0,
    NotPrimePower,
    TooLarge,
    DivisionByZero,
    Singular,
    Inconsistent,
    Underdetermined,
    FieldTooSmall,
    ShapeMismatch,
    InvalidParams,
    DivisibilityViolation,
    TooManyErasures,
    InternalRankFailure,
    NodeOutOfRange,
    InvalidPair,
    InvalidSpec,
    NotMds,
    Io,
};

const char* error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, std::string(error_name(code)) + ": " + what);
}

} // namespace ubcode
