#pragma once

#include <stdexcept>
#include <string>

namespace bmc {

enum class ErrorCode {
    // graph construction / queries
    NonPositiveWeight,
    SelfLoop,
    DuplicateEdge,
    NodeIdOutOfRange,
    EmptyLeaderSet,
    NotConnected,
    // dynamics
    LengthMismatch,
    NonFiniteState,
    NonConvergence,
    // path extraction
    NotConverged,
    EnumerationCapExceeded,
    CycleDetected,
    // grid / image ingestion
    RaggedRows,
    UnknownCharacter,
    NoDestination,
    MalformedHeader,
    TruncatedPayload,
    NoFreeCells,
    PathOffGrid,
    // plumbing
    InvalidParameter,
    ParseError,
    IoError,
};

inline const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonPositiveWeight: return "NonPositiveWeight";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::NodeIdOutOfRange: return "NodeIdOutOfRange";
        case ErrorCode::EmptyLeaderSet: return "EmptyLeaderSet";
        case ErrorCode::NotConnected: return "NotConnected";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::NonFiniteState: return "NonFiniteState";
        case ErrorCode::NonConvergence: return "NonConvergence";
        case ErrorCode::NotConverged: return "NotConverged";
        case ErrorCode::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorCode::CycleDetected: return "CycleDetected";
        case ErrorCode::RaggedRows: return "RaggedRows";
        case ErrorCode::UnknownCharacter: return "UnknownCharacter";
        case ErrorCode::NoDestination: return "NoDestination";
        case ErrorCode::MalformedHeader: return "MalformedHeader";
        case ErrorCode::TruncatedPayload: return "TruncatedPayload";
        case ErrorCode::NoFreeCells: return "NoFreeCells";
        case ErrorCode::PathOffGrid: return "PathOffGrid";
        case ErrorCode::InvalidParameter: return "InvalidParameter";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

/// Library-wide exception carrying a machine-checkable code.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
    throw Error(code, message);
}

} // namespace bmc
