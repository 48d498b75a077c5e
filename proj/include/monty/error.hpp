#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monty {

/// Machine-readable failure categories shared by the library, CLI and service.
enum class ErrorCode {
  kInvalidDoor,
  kInvalidDistribution,
  kInvalidArgument,
  kParseError,
  kWrongPhase,
  kUnreachable,
  kNotFound,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace monty
