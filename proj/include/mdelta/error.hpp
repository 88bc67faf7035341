#pragma once

#include <stdexcept>
#include <string>

namespace mdelta {

// Every failure the library can signal. The CLI prints these as
// "error[CODE]: message" on stderr.
enum class ErrorCode {
  Io,
  Usage,
  Config,
  RaggedRow,
  NonNumericCell,
  TooFewRespondents,
  DuplicateLabel,
  LengthMismatch,
  DegenerateInstance,
  CountOutOfRange,
  PositionOutOfRange,
  InstanceTooLarge,
  ZeroTotalVariance,
  SingleItem,
  ConstantHalf,
  NonConvergence,
  DegenerateCovariance,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace mdelta
