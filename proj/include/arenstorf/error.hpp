#pragma once

#include <stdexcept>
#include <string>

namespace arenstorf {

/// Failure categories shared by the C++ core and the C API status codes.
enum class ErrorCode {
  domain = 1,
  insufficient_base,
  config,
  io,
  corrupt_state,
  version_mismatch,
  segment_mismatch,
  fit,
  parse,
  interrupted,
  resource,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace arenstorf
