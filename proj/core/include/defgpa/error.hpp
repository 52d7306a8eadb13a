#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace defgpa {

/// Failure categories raised by the library. The CLI maps FormatError to a
/// usage failure and everything else to a runtime failure.
enum class ErrorCode {
  InvalidMatrix,
  DimensionError,
  NotAnEigenvector,
  DegenerateInput,
  FormatError,
  UnconstrainedPoint,
  DegenerateCenters,
  InsufficientOverlap,
  DegenerateConfiguration,
  SingularSystem,
  SingularTransform,
  Unsupported,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the normal-matrix solves; carries the offending shape index.
class SingularSystemError : public Error {
 public:
  SingularSystemError(std::size_t shape_index, const std::string& message);

  std::size_t shape_index() const noexcept { return shape_index_; }

 private:
  std::size_t shape_index_;
};

}  // namespace defgpa
