#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ofc {

enum class ErrorCode {
    OverlappingSegments,
    OutOfBounds,
    PointOutsideBBox,
    InvalidTiling,
    InvalidFanout,
    InvalidParameter,
    RetryExhausted,
    HeightOutOfRegime,
    NotRootToLeaf,
    InvalidHeights,
    PathOutOfRegime,
    InvalidRounds,
    VertexNotOnPath,
    PathTooShort,
    DisconnectedSubgraph,
    UnknownVertex,
    InvalidQuery,
    InvalidCatalog,
    InfeasibleParams,
    ParseError,
};

inline const char* to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::OverlappingSegments: return "OverlappingSegments";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::PointOutsideBBox: return "PointOutsideBBox";
    case ErrorCode::InvalidTiling: return "InvalidTiling";
    case ErrorCode::InvalidFanout: return "InvalidFanout";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::RetryExhausted: return "RetryExhausted";
    case ErrorCode::HeightOutOfRegime: return "HeightOutOfRegime";
    case ErrorCode::NotRootToLeaf: return "NotRootToLeaf";
    case ErrorCode::InvalidHeights: return "InvalidHeights";
    case ErrorCode::PathOutOfRegime: return "PathOutOfRegime";
    case ErrorCode::InvalidRounds: return "InvalidRounds";
    case ErrorCode::VertexNotOnPath: return "VertexNotOnPath";
    case ErrorCode::PathTooShort: return "PathTooShort";
    case ErrorCode::DisconnectedSubgraph: return "DisconnectedSubgraph";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::InvalidQuery: return "InvalidQuery";
    case ErrorCode::InvalidCatalog: return "InvalidCatalog";
    case ErrorCode::InfeasibleParams: return "InfeasibleParams";
    case ErrorCode::ParseError: return "ParseError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

/// Parse failure carrying the 1-based line number of the offending input line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

} // namespace ofc
