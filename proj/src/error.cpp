#include "elements/error.hpp"

namespace elements {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::UnknownEntity: return "UnknownEntity";
    case ErrorCode::CycleError: return "CycleError";
    case ErrorCode::AlreadyParented: return "AlreadyParented";
    case ErrorCode::RootReparent: return "RootReparent";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::ListenerError: return "ListenerError";
    case ErrorCode::DegenerateAxis: return "DegenerateAxis";
    case ErrorCode::NonUnitQuaternion: return "NonUnitQuaternion";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidFrustum: return "InvalidFrustum";
    case ErrorCode::DegenerateBasis: return "DegenerateBasis";
    case ErrorCode::SingularMatrix: return "SingularMatrix";
    case ErrorCode::NonPositiveDilation: return "NonPositiveDilation";
    case ErrorCode::PointAtInfinity: return "PointAtInfinity";
    case ErrorCode::NoCamera: return "NoCamera";
    case ErrorCode::MultipleCameras: return "MultipleCameras";
    case ErrorCode::MalformedMesh: return "MalformedMesh";
    case ErrorCode::MalformedBuffer: return "MalformedBuffer";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::EmptyTrack: return "EmptyTrack";
    case ErrorCode::InvalidInfluence: return "InvalidInfluence";
    case ErrorCode::UnnormalizedWeights: return "UnnormalizedWeights";
    case ErrorCode::DecompositionError: return "DecompositionError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    }
    return "Unknown";
}

} // namespace elements
