#include "tsalg/errors.hpp"

namespace tsalg {

std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
    case ErrorCode::IndeterminateSign: return "IndeterminateSign";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::NumericOverflow: return "NumericOverflow";
    case ErrorCode::AxisMismatch: return "AxisMismatch";
    case ErrorCode::EmptyElement: return "EmptyElement";
    case ErrorCode::IllegalFlip: return "IllegalFlip";
    case ErrorCode::InvalidScale: return "InvalidScale";
    case ErrorCode::BasisTooShort: return "BasisTooShort";
    case ErrorCode::NonIntegerLattice: return "NonIntegerLattice";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::NotAnalytic: return "NotAnalytic";
    case ErrorCode::NotInAmbient: return "NotInAmbient";
    case ErrorCode::DegeneratePhase: return "DegeneratePhase";
    case ErrorCode::DivergentPacket: return "DivergentPacket";
    case ErrorCode::ScheduleTooShort: return "ScheduleTooShort";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Internal: return "Internal";
    }
    return "Internal";
}

} // namespace tsalg
