#ifndef FAIRSP_ERRORS_HPP
#define FAIRSP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fairsp {

enum class ErrorCode {
  NotAPermutation,
  NotSinglePeaked,
  SizeGuardExceeded,
  IndexOutOfRange,
  DimensionMismatch,
  SizeMismatch,
  MissingBallot,
  InvalidBallotFamily,
  InvalidParameters,
  MixedComponentKinds,
  RequiresSingleGroup,
  RequiresSingletonGroups,
  InvalidSpec,
  NonCompliantScenario,
  PreconditionViolated,
  NotTopContaining,
  InvalidOffset,
  ParseError,
  InconsistentInstance,
  Internal,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

// Size guards for enumeration-based operations. Exceeding a guard raises
// SizeGuardExceeded instead of starting unbounded work.
struct Guards {
  int max_m = 7;        // full-domain enumeration
  int max_n = 6;        // full-profile enumeration
  int max_subset_n = 5; // subset-indexed rules store 2^n entries
};

inline void check_m_guard(int m, const Guards& g) {
  if (m < 1) raise(ErrorCode::IndexOutOfRange, "m must be >= 1");
  if (m > g.max_m)
    raise(ErrorCode::SizeGuardExceeded,
          "m=" + std::to_string(m) + " exceeds guard " + std::to_string(g.max_m));
}

inline void check_n_guard(int n, const Guards& g) {
  if (n < 1) raise(ErrorCode::IndexOutOfRange, "n must be >= 1");
  if (n > g.max_n)
    raise(ErrorCode::SizeGuardExceeded,
          "n=" + std::to_string(n) + " exceeds guard " + std::to_string(g.max_n));
}

}  // namespace fairsp

#endif
