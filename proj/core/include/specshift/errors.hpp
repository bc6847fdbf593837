#pragma once

#include <stdexcept>
#include <string>

namespace specshift {

// One exception type for the whole library; `code` is the machine-readable
// classification the CLI maps to exit codes.
class Error : public std::runtime_error {
 public:
  enum class Code {
    invalid_argument,    // bad dimension, index, direction, domain value
    shape,               // inconsistent matrix/vector shapes
    capability,          // derivative order beyond what a function family provides
    hypothesis_not_met,  // an analytic precondition checked and found violated
    numeric,             // eigensolve failure, NaN from an integrand, divergence
    resource,            // configured cap exceeded
    no_limit,            // extrapolation did not converge
  };

  Error(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Code code() const noexcept { return code_; }

 private:
  Code code_;
};

[[noreturn]] inline void throw_error(Error::Code code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool cond, Error::Code code, const std::string& what) {
  if (!cond) throw_error(code, what);
}

}  // namespace specshift
