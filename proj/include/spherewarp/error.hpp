#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace spherewarp {

enum class ErrorCode {
    PoleProjection,
    BehindCamera,
    DomainError,
    IdentityMap,
    NonPositiveScale,
    OutOfImage,
    NotRepresentable,
    InvalidRequest,
    Io,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so
// callers (the renderer, the CLI) can react per kind without string matching.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace spherewarp
