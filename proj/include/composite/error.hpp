#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace composite {

enum class ErrorCode {
  AllZero,
  ShapeMismatch,
  NumericalError,
  GridTooCoarse,
  DimensionOverflow,
  IndexOutOfRange,
  SpaceMismatch,
  ZeroState,
  UnsupportedKind,
  NotPositiveDefinite,
  InvalidArgument,
  ParseError,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::AllZero: return "AllZero";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NumericalError: return "NumericalError";
    case ErrorCode::GridTooCoarse: return "GridTooCoarse";
    case ErrorCode::DimensionOverflow: return "DimensionOverflow";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::SpaceMismatch: return "SpaceMismatch";
    case ErrorCode::ZeroState: return "ZeroState";
    case ErrorCode::UnsupportedKind: return "UnsupportedKind";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

// Every failure in the library is reported through this type; code() says which.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace composite
