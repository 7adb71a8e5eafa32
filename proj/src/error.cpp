#include "ambush/error.hpp"

namespace ambush {

std::string_view error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kMalformedNetwork: return "MalformedNetwork";
    case ErrorKind::kNoCutExists: return "NoCutExists";
    case ErrorKind::kUnsupportedCapacities: return "UnsupportedCapacities";
    case ErrorKind::kInvalidFlow: return "InvalidFlow";
    case ErrorKind::kMalformedProgram: return "MalformedProgram";
    case ErrorKind::kInvalidStrategy: return "InvalidStrategy";
    case ErrorKind::kInfeasibleGame: return "InfeasibleGame";
    case ErrorKind::kNoPath: return "NoPath";
    case ErrorKind::kInvalidReach: return "InvalidReach";
    case ErrorKind::kInvalidDomain: return "InvalidDomain";
    case ErrorKind::kEmptyTerminalSet: return "EmptyTerminalSet";
    case ErrorKind::kNoSites: return "NoSites";
    case ErrorKind::kParse: return "ParseError";
    case ErrorKind::kInvariantViolation: return "InvariantViolation";
  }
  return "Unknown";
}

}  // namespace ambush
