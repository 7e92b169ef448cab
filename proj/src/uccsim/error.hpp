#pragma once

#include <stdexcept>
#include <string>

namespace uccsim {

enum class ErrorCode {
  InvalidArgument,  // parameter outside its documented range
  DomainMismatch,   // objects over different input spaces
  TooLarge,         // would exceed a memory or enumeration cap
  Undefined,        // quantity not defined (zero-mass conditional, empty support)
  Validation,       // a certified property failed to hold
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, ErrorCode code, const char* what) {
  if (!cond) throw Error(code, what);
}

}  // namespace uccsim
