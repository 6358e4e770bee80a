#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stgmine {

enum class ErrorCode {
    DuplicateIdentity,
    DuplicateLabel,
    BadLayer,
    LayerViolation,
    IdentityViolation,
    DuplicateEdge,
    UnknownNode,
    UnknownRegion,
    SelfLoop,
    InvalidRelation,
    EmptySeries,
    BadInput,
    BadAnchor,
    TooLarge,
    ParseError,
    SchemaVersionError,
};

inline std::string_view error_code_name(ErrorCode code)
{
    switch (code) {
        case ErrorCode::DuplicateIdentity: return "DuplicateIdentity";
        case ErrorCode::DuplicateLabel: return "DuplicateLabel";
        case ErrorCode::BadLayer: return "BadLayer";
        case ErrorCode::LayerViolation: return "LayerViolation";
        case ErrorCode::IdentityViolation: return "IdentityViolation";
        case ErrorCode::DuplicateEdge: return "DuplicateEdge";
        case ErrorCode::UnknownNode: return "UnknownNode";
        case ErrorCode::UnknownRegion: return "UnknownRegion";
        case ErrorCode::SelfLoop: return "SelfLoop";
        case ErrorCode::InvalidRelation: return "InvalidRelation";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::BadInput: return "BadInput";
        case ErrorCode::BadAnchor: return "BadAnchor";
        case ErrorCode::TooLarge: return "TooLarge";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::SchemaVersionError: return "SchemaVersionError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code)
    {
    }

    ErrorCode code() const { return code_; }

private:
    ErrorCode code_;
};

} // namespace stgmine
