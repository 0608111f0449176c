#include "ssl/error.hpp"

namespace ssl {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::TriangleInequality: return "TriangleInequality";
    case ErrorCode::NonManifold: return "NonManifold";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotBoundary: return "NotBoundary";
    case ErrorCode::DegenerateSplit: return "DegenerateSplit";
    case ErrorCode::WrongBoundaryCount: return "WrongBoundaryCount";
    case ErrorCode::LoopNotOnSurface: return "LoopNotOnSurface";
    case ErrorCode::AlreadyOrientable: return "AlreadyOrientable";
    case ErrorCode::SimplyConnected: return "SimplyConnected";
    case ErrorCode::CapTooSmall: return "CapTooSmall";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::SpecOutOfRange: return "SpecOutOfRange";
    case ErrorCode::SubdivisionMismatch: return "SubdivisionMismatch";
    case ErrorCode::BadResolution: return "BadResolution";
    case ErrorCode::NoRoomForHandles: return "NoRoomForHandles";
    case ErrorCode::ConstructionInvariant: return "ConstructionInvariant";
    case ErrorCode::IOFailure: return "IOFailure";
  }
  return "Unknown";
}

}  // namespace ssl
