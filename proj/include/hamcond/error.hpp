#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace hamcond {

enum class ErrorCode {
  InvalidDimension,
  StructureMismatch,
  ZeroProjection,
  DecompositionFailed,
  MatchingFailed,
  NotSimple,
  NotNormalized,
  DefectiveEigenvalue,
  InputError,
};

const char* to_string(ErrorCode code);

// Single exception type for the library; callers switch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Short %g rendering of a floating-point value for error messages.
inline std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace hamcond
