#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace gesture {

enum class ErrorCode {
  MalformedJson,
  SchemaViolation,
  NoPersonDetected,
  TooShort,
  KeypointNeverSeen,
  DegenerateShoulders,
  EmptySeries,
  NoDimensionsSelected,
  EmptyCandidates,
  ClassificationFailed,
  MissingGesture,
  InvalidSpec,
  InvalidArgument,
  IoError,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries a machine-checkable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gesture

namespace gesture {

// Non-fatal diagnostics (e.g. extra people in a frame) go through this hook.
// The default handler writes to stderr.
using WarningHandler = void (*)(std::string_view message);
void set_warning_handler(WarningHandler handler);
void warn(std::string_view message);

}  // namespace gesture
