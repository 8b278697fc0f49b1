#pragma once

#include <stdexcept>
#include <string>

namespace mppc {

// Base of every library error. name() is the stable identifier the CLI
// propagates verbatim to the user.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
  virtual const char* name() const noexcept { return "Error"; }
};

#define MPPC_DEFINE_ERROR(ClassName)                                    \
  class ClassName : public Error {                                      \
  public:                                                               \
    explicit ClassName(const std::string& msg) : Error(msg) {}          \
    const char* name() const noexcept override { return #ClassName; }   \
  }

MPPC_DEFINE_ERROR(DomainError);         // argument outside a documented domain
MPPC_DEFINE_ERROR(PrecisionError);      // a certified bound cannot be met
MPPC_DEFINE_ERROR(NotIncreasingError);  // sequence terms fail strict monotonicity
MPPC_DEFINE_ERROR(ParseError);          // malformed input file or flag value
MPPC_DEFINE_ERROR(SizeError);           // input exceeds a configured work budget
MPPC_DEFINE_ERROR(SieveLimitError);     // support element above the sieve limit
MPPC_DEFINE_ERROR(QuadratureError);     // adaptive refinement stalled or paths disagree
MPPC_DEFINE_ERROR(SeriesError);         // series terms failed to converge in budget
MPPC_DEFINE_ERROR(SmoothnessError);     // support element has a prime factor > P
MPPC_DEFINE_ERROR(ConvergenceError);    // iterative solver failed to converge

#undef MPPC_DEFINE_ERROR

}  // namespace mppc
