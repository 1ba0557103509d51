#pragma once

#include <stdexcept>
#include <string>

namespace phigamma {

enum class ErrorCode {
  DivisionByZero,
  PrecisionExhausted,
  DomainError,
  NonInvertible,
  NotInvertible,
  WindowExhausted,
  NotInPhiImage,
  AccuracyFloorTooLow,
  PoleAtZero,
  NotInNrig,
  HTooSmall,
  NotPsiFixed,
  SeriesNotConverged,
  NoSolutionInWindow,
  SchemaViolation,
};

const char* error_name(ErrorCode c);

class KernelError : public std::runtime_error {
 public:
  KernelError(ErrorCode c, const std::string& msg)
      : std::runtime_error(std::string(error_name(c)) + ": " + msg), code_(c) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode c, const std::string& msg) { throw KernelError(c, msg); }

}  // namespace phigamma
