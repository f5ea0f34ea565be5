#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tsequiv {

enum class ErrorCode {
    InvalidArgument,
    SeriesTooShort,
    DegenerateSegment,
    DomainMismatch,
    ZeroFunction,
    EmptySet,
    LabelMismatch,
    InvalidCoordinate,
    DuplicateStation,
    BadK,
    DisconnectedDegenerate,
    WindowOutOfRange,
    UnparseableCell,
    AllMissingColumn,
    IdMismatch,
    Io,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by malformed input files rather than by parameters
// or numerics. The CLI maps these to exit code 1 and everything else to 2.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tsequiv
