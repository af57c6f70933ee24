#pragma once

#include <stdexcept>
#include <string>

namespace normesh {

enum class ErrorCode {
    InvalidArgument,
    InvalidInterval,
    InvalidAngle,
    InvalidFactor,
    ParameterValidation,
    DomainError,
    UnsupportedKind,
    ScalingError,
    DeterminingSetViolation,
    ExtractionFailure,
    NumericalError,
    JsonError,
    IoError,
    InternalError,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a stable error code so the C API can map failures
/// without string matching.
class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) { throw Error(code, msg); }

}  // namespace normesh
