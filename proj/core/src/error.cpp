#include "defgpa/error.hpp"

namespace defgpa {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidMatrix: return "InvalidMatrix";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::NotAnEigenvector: return "NotAnEigenvector";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::FormatError: return "FormatError";
    case ErrorCode::UnconstrainedPoint: return "UnconstrainedPoint";
    case ErrorCode::DegenerateCenters: return "DegenerateCenters";
    case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::DegenerateConfiguration: return "DegenerateConfiguration";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::SingularTransform: return "SingularTransform";
    case ErrorCode::Unsupported: return "Unsupported";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

SingularSystemError::SingularSystemError(std::size_t shape_index, const std::string& message)
    : Error(ErrorCode::SingularSystem,
            "shape " + std::to_string(shape_index) + ": " + message),
      shape_index_(shape_index) {}

}  // namespace defgpa
