#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace elements {

enum class ErrorCode {
    // ecss-core
    UnknownEntity,
    CycleError,
    AlreadyParented,
    RootReparent,
    DuplicateComponent,
    ListenerError,
    // math / cga
    DegenerateAxis,
    NonUnitQuaternion,
    InvalidArgument,
    InvalidFrustum,
    DegenerateBasis,
    SingularMatrix,
    NonPositiveDilation,
    PointAtInfinity,
    // systems / render
    NoCamera,
    MultipleCameras,
    MalformedMesh,
    MalformedBuffer,
    IoError,
    // animation
    EmptyTrack,
    InvalidInfluence,
    UnnormalizedWeights,
    // graph export
    DecompositionError,
    // app
    ParseError,
    ValidationError,
    IndexOutOfRange,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the engine carries one of the codes above.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// Validation failures map to CLI exit code 2, everything else to 1.
    bool is_validation() const noexcept {
        return code_ == ErrorCode::ValidationError || code_ == ErrorCode::NoCamera ||
               code_ == ErrorCode::MultipleCameras;
    }

private:
    ErrorCode code_;
};

} // namespace elements
