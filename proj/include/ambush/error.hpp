#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace ambush {

enum class ErrorKind {
  kMalformedNetwork,
  kNoCutExists,
  kUnsupportedCapacities,
  kInvalidFlow,
  kMalformedProgram,
  kInvalidStrategy,
  kInfeasibleGame,
  kNoPath,
  kInvalidReach,
  kInvalidDomain,
  kEmptyTerminalSet,
  kNoSites,
  kParse,
  kInvariantViolation,
};

std::string_view error_kind_name(ErrorKind kind);

// Single exception type for the library; callers switch on kind().
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::string field = {})
      : std::runtime_error(message), kind_(kind), field_(std::move(field)) {}

  ErrorKind kind() const { return kind_; }
  // Name of the offending input field, when the error came from parsing.
  const std::string& field() const { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace ambush
