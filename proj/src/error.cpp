#include "indban/error.hpp"

namespace indban {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::DimensionCapExceeded: return "DimensionCapExceeded";
    case ErrorKind::MixedBackends: return "MixedBackends";
    case ErrorKind::BoundViolated: return "BoundViolated";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::UndecidableComparison: return "UndecidableComparison";
    case ErrorKind::NotIrreducible: return "NotIrreducible";
    case ErrorKind::NotAutomorphism: return "NotAutomorphism";
    case ErrorKind::GroupOrderMismatch: return "GroupOrderMismatch";
    case ErrorKind::UnsupportedExtension: return "UnsupportedExtension";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::NotAnAction: return "NotAnAction";
    case ErrorKind::NotFiltered: return "NotFiltered";
    case ErrorKind::IncoherentTransitions: return "IncoherentTransitions";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::WindowNotGroup: return "WindowNotGroup";
    case ErrorKind::ScheduleNotDecreasing: return "ScheduleNotDecreasing";
    case ErrorKind::NotGrouplikeCoalgebra: return "NotGrouplikeCoalgebra";
    case ErrorKind::ProjectionsDoNotResolve: return "ProjectionsDoNotResolve";
    case ErrorKind::NotAHomomorphism: return "NotAHomomorphism";
    case ErrorKind::DegeneratePairing: return "DegeneratePairing";
    case ErrorKind::SingularComparison: return "SingularComparison";
    case ErrorKind::DescentFails: return "DescentFails";
    case ErrorKind::NotAComodule: return "NotAComodule";
    case ErrorKind::ToleranceUnreachable: return "ToleranceUnreachable";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownCheck: return "UnknownCheck";
    case ErrorKind::UnknownReference: return "UnknownReference";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

} // namespace indban
