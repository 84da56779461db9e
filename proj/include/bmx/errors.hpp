#pragma once

#include <stdexcept>
#include <string>

namespace bmx {

/// Error taxonomy shared by the C++ core and the C API (codes map 1:1).
enum class ErrorCode : int {
  Ok = 0,
  InvalidArgument = 1,
  ParseError = 2,
  BasisMismatch = 3,
  ParityError = 4,
  NotKahler = 5,
  DegenerateClass = 6,
  DomainError = 7,
  OutOfDomain = 8,
  NonFinite = 9,
  NotPositiveDefinite = 10,
  IncompatibleStructure = 11,
  NotFound = 12,
  Overflow = 13,
  Unsupported = 14,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& msg) {
  throw Error(code, msg);
}

}  // namespace bmx
