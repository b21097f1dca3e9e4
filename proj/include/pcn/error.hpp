#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pcn {

enum class ErrorCode {
    ParseError,
    ShapeError,
    MarginError,
    OutOfBounds,
    ModeError,
    CountOverflow,
    EmptySample,
    MergeError,
    CandidateError,
    TooLarge,
    InsufficientTrace,
    DeltaError,
    EmptyInput,
    UnseenContext,
    ConfigError,
    IoError,
};

/// Stable upper-case name used in CLI error output, e.g. "EMPTY_SAMPLE".
std::string_view error_name(ErrorCode code);

class PcnError : public std::runtime_error {
public:
    PcnError(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace pcn
