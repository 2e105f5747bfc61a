// Error taxonomy shared by every module. Each failure mode has one code so
// callers (and the CLI exit-code mapping) can branch without string matching.
#pragma once

#include <stdexcept>
#include <string>

namespace cgg {

enum class ErrorCode {
    // partitions and grains
    Uncovered,
    UnboundedGrain,
    Incomparable,
    OverlappingGrains,
    EmptyInterval,
    // games and profiles
    DimensionMismatch,
    IgnorePreprocessing,
    // perception analysis
    AmbiguousSelection,
    MultipleBaseEquilibria,
    // repeated games
    InvalidDiscount,
    DegenerateRoles,
    RoleLabelMissing,
    // scenarios
    InvalidBounds,
    // io
    ParseError,
    ValidationError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace cgg
