#pragma once

#include <stdexcept>
#include <string>

namespace indban {

enum class ErrorKind {
    DimensionMismatch,
    DimensionCapExceeded,
    MixedBackends,
    BoundViolated,
    CapExceeded,
    UndecidableComparison,
    NotIrreducible,
    NotAutomorphism,
    GroupOrderMismatch,
    UnsupportedExtension,
    IndexOutOfRange,
    NotAnAction,
    NotFiltered,
    IncoherentTransitions,
    NotAGroup,
    WindowNotGroup,
    ScheduleNotDecreasing,
    NotGrouplikeCoalgebra,
    ProjectionsDoNotResolve,
    NotAHomomorphism,
    DegeneratePairing,
    SingularComparison,
    DescentFails,
    NotAComodule,
    ToleranceUnreachable,
    ParseError,
    UnknownCheck,
    UnknownReference,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace indban
