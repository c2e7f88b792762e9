#include "nilwkb/error.hpp"

namespace nilwkb {

const char* to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::PoleHit: return "PoleHit";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ZeroScale: return "ZeroScale";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::ZeroHiggsField: return "ZeroHiggsField";
    case ErrorKind::BadBlocks: return "BadBlocks";
    case ErrorKind::FixedPointDetected: return "FixedPointDetected";
    case ErrorKind::NotHolomorphic: return "NotHolomorphic";
    case ErrorKind::ClearanceViolated: return "ClearanceViolated";
    case ErrorKind::StiffnessBudgetExceeded: return "StiffnessBudgetExceeded";
    case ErrorKind::BranchPointOnPath: return "BranchPointOnPath";
    case ErrorKind::TieAtStart: return "TieAtStart";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::NonDecayingSequence: return "NonDecayingSequence";
    case ErrorKind::GluingLengthMismatch: return "GluingLengthMismatch";
    case ErrorKind::UnmatchedEdge: return "UnmatchedEdge";
    case ErrorKind::NonManifoldCorner: return "NonManifoldCorner";
    case ErrorKind::NoRecurrenceWithinBudget: return "NoRecurrenceWithinBudget";
    case ErrorKind::ConnectorNotTransverse: return "ConnectorNotTransverse";
    case ErrorKind::BadPuncture: return "BadPuncture";
    case ErrorKind::UnstableWeights: return "UnstableWeights";
    case ErrorKind::InvalidWeights: return "InvalidWeights";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

bool is_budget_error(ErrorKind kind) {
    return kind == ErrorKind::StiffnessBudgetExceeded ||
           kind == ErrorKind::NoRecurrenceWithinBudget;
}

} // namespace nilwkb
