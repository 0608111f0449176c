#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ssl {

enum class ErrorCode {
  InvalidInput,
  LengthMismatch,
  TriangleInequality,
  NonManifold,
  Disconnected,
  NotBoundary,
  DegenerateSplit,
  WrongBoundaryCount,
  LoopNotOnSurface,
  AlreadyOrientable,
  SimplyConnected,
  CapTooSmall,
  TooLarge,
  SpecOutOfRange,
  SubdivisionMismatch,
  BadResolution,
  NoRoomForHandles,
  ConstructionInvariant,
  IOFailure,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace ssl
