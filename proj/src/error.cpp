#include "tsequiv/error.hpp"

namespace tsequiv {

std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::DegenerateSegment: return "DegenerateSegment";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::ZeroFunction: return "ZeroFunction";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::LabelMismatch: return "LabelMismatch";
    case ErrorCode::InvalidCoordinate: return "InvalidCoordinate";
    case ErrorCode::DuplicateStation: return "DuplicateStation";
    case ErrorCode::BadK: return "BadK";
    case ErrorCode::DisconnectedDegenerate: return "DisconnectedDegenerate";
    case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::UnparseableCell: return "UnparseableCell";
    case ErrorCode::AllMissingColumn: return "AllMissingColumn";
    case ErrorCode::IdMismatch: return "IdMismatch";
    case ErrorCode::Io: return "Io";
    }
    return "Unknown";
}

bool is_input_error(ErrorCode code) {
    switch (code) {
    case ErrorCode::UnparseableCell:
    case ErrorCode::AllMissingColumn:
    case ErrorCode::IdMismatch:
    case ErrorCode::InvalidCoordinate:
    case ErrorCode::DuplicateStation:
    case ErrorCode::Io:
        return true;
    default:
        return false;
    }
}

} // namespace tsequiv
