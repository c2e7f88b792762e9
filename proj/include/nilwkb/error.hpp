#pragma once

#include <stdexcept>
#include <string>

namespace nilwkb {

enum class ErrorKind {
    PoleHit,
    DimensionMismatch,
    ZeroScale,
    NotNilpotent,
    ZeroHiggsField,
    BadBlocks,
    FixedPointDetected,
    NotHolomorphic,
    ClearanceViolated,
    StiffnessBudgetExceeded,
    BranchPointOnPath,
    TieAtStart,
    InsufficientSamples,
    NonDecayingSequence,
    GluingLengthMismatch,
    UnmatchedEdge,
    NonManifoldCorner,
    NoRecurrenceWithinBudget,
    ConnectorNotTransverse,
    BadPuncture,
    UnstableWeights,
    InvalidWeights,
    ParseError,
    InvalidArgument,
};

const char* to_string(ErrorKind kind);

// Budget errors map to CLI exit code 2, everything else to 1.
bool is_budget_error(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

} // namespace nilwkb
