#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tsalg {

enum class ErrorCode {
    IndeterminateSign,
    DivisionByZero,
    NumericOverflow,
    AxisMismatch,
    EmptyElement,
    IllegalFlip,
    InvalidScale,
    BasisTooShort,
    NonIntegerLattice,
    NotFound,
    NotInDomain,
    NotAnalytic,
    NotInAmbient,
    DegeneratePhase,
    DivergentPacket,
    ScheduleTooShort,
    UnknownSymbol,
    ParseError,
    ConfigError,
    InvalidArgument,
    Internal,
};

std::string_view error_code_name(ErrorCode code);

/// Half-open byte range into some input text (used by the parser).
struct SourceSpan {
    std::size_t begin = 0;
    std::size_t end = 0;
};

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::optional<SourceSpan> span = std::nullopt)
        : std::runtime_error(message), code_(code), span_(span)
    {
    }

    ErrorCode code() const noexcept { return code_; }
    const std::optional<SourceSpan>& span() const noexcept { return span_; }

private:
    ErrorCode code_;
    std::optional<SourceSpan> span_;
};

} // namespace tsalg
