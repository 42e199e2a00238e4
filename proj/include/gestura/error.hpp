#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gestura {

// Error classes shared by every module. The CLI maps each class to its own
// exit code (see exit_code()).
enum class ErrorCode : std::uint8_t {
  MalformedRecord,
  WrongArity,
  OutOfRange,
  BadTimestamp,
  SourceUnavailable,
  NonMonotonicTime,
  InvalidConfig,
  UnsupportedAction,
  BackendFailure,
  CityUnknown,
  ProviderUnreachable,
  NoLabels,
  LabelOutOfRange,
};

const char* error_code_name(ErrorCode code);

// Process exit code for an error class. 0 is reserved for success, 1 for
// unexpected failures and 2 for usage errors.
int exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // Message without the error-class prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace gestura
