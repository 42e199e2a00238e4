#include "gestura/error.hpp"

namespace gestura {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::BadTimestamp: return "BadTimestamp";
    case ErrorCode::SourceUnavailable: return "SourceUnavailable";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::UnsupportedAction: return "UnsupportedAction";
    case ErrorCode::BackendFailure: return "BackendFailure";
    case ErrorCode::CityUnknown: return "CityUnknown";
    case ErrorCode::ProviderUnreachable: return "ProviderUnreachable";
    case ErrorCode::NoLabels: return "NoLabels";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
  }
  return "Unknown";
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SourceUnavailable: return 3;
    case ErrorCode::MalformedRecord:
    case ErrorCode::WrongArity:
    case ErrorCode::OutOfRange:
    case ErrorCode::BadTimestamp: return 4;
    case ErrorCode::InvalidConfig: return 5;
    case ErrorCode::NoLabels:
    case ErrorCode::LabelOutOfRange: return 6;
    case ErrorCode::NonMonotonicTime: return 7;
    case ErrorCode::UnsupportedAction:
    case ErrorCode::BackendFailure: return 8;
    case ErrorCode::CityUnknown:
    case ErrorCode::ProviderUnreachable: return 9;
  }
  return 1;
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code),
      detail_(message) {}

}  // namespace gestura
