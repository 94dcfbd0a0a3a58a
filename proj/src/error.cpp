#include "gesture/error.hpp"

namespace gesture {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedJson: return "MalformedJson";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::NoPersonDetected: return "NoPersonDetected";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::KeypointNeverSeen: return "KeypointNeverSeen";
    case ErrorCode::DegenerateShoulders: return "DegenerateShoulders";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::NoDimensionsSelected: return "NoDimensionsSelected";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::ClassificationFailed: return "ClassificationFailed";
    case ErrorCode::MissingGesture: return "MissingGesture";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace gesture

#include <atomic>
#include <iostream>

namespace gesture {
namespace {

void stderr_handler(std::string_view message) { std::cerr << "warning: " << message << '\n'; }

std::atomic<WarningHandler> g_handler{&stderr_handler};

}  // namespace

void set_warning_handler(WarningHandler handler) {
  g_handler.store(handler ? handler : &stderr_handler);
}

void warn(std::string_view message) { g_handler.load()(message); }

}  // namespace gesture
