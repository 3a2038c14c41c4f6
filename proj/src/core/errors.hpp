#pragma once

#include <stdexcept>
#include <string>

namespace qumvqd {

enum class ErrorCode {
  Argument = 1,
  Parse = 2,
  Capacity = 3,
  SymmetryViolation = 4,
  Numerical = 5,
  Truncation = 6,
  Convergence = 7,
  InputInconsistency = 8,
  Io = 9,
  Internal = 10,
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

inline void require(bool cond, ErrorCode code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace qumvqd
