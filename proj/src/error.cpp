#include "pjacobi/error.hpp"

namespace pjacobi {

std::string_view to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::LengthMismatch: return "LengthMismatch";
        case ErrorKind::NonPositiveOffDiagonal: return "NonPositiveOffDiagonal";
        case ErrorKind::NonFiniteEntry: return "NonFiniteEntry";
        case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
        case ErrorKind::DegenerateInterval: return "DegenerateInterval";
        case ErrorKind::NonConvergence: return "NonConvergence";
        case ErrorKind::PropertyViolation: return "PropertyViolation";
        case ErrorKind::EdgeCountMismatch: return "EdgeCountMismatch";
        case ErrorKind::CapacityMismatch: return "CapacityMismatch";
        case ErrorKind::AlternationFailure: return "AlternationFailure";
        case ErrorKind::ConfigInvalid: return "ConfigInvalid";
        case ErrorKind::ParseError: return "ParseError";
    }
    return "Unknown";
}

}  // namespace pjacobi
