#pragma once

#include <stdexcept>
#include <string>

namespace graphon {

enum class ErrorCode {
  kInvalidArgument = 1,
  kInfeasible = 2,
  kSolverFailure = 3,
  kParse = 4,
  kSaturated = 5,
  kPole = 6,
};

/// Exception carrying a machine-readable category. The C API maps the
/// category onto its integer status codes.
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

}  // namespace graphon
