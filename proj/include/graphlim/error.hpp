#pragma once

#include <stdexcept>
#include <string>

namespace graphlim {

enum class ErrorCode {
  invalid_argument = 1,
  parse = 2,
  out_of_range = 3,
  unsupported = 4,
  not_aligned = 5,
  domination = 6,
  io = 7,
};

// Single exception type for the library; the C API maps `code()` onto its
// status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, ErrorCode code, const std::string& what) {
  if (!cond) fail(code, what);
}

}  // namespace graphlim
