#pragma once

#include <stdexcept>
#include <string>

namespace stopping {

/// Failure categories surfaced by the library.  Every throw site uses one of
/// these so callers (and the CLI's per-row status column) can react without
/// string matching.
enum class errc {
  invalid_argument,          ///< caller broke a documented precondition
  unsupported_for_discrete,  ///< density/derivative asked of a point-mass law
  divergent_tail,            ///< tail expectation is infinite
  divergent_mean,            ///< mean (or requested moment) is infinite
  degenerate_curvature,      ///< revenue curvature vanishes at the optimum
  arity_mismatch,            ///< policy atom count disagrees with n
  search_too_large,          ///< enumeration/iteration budget exceeded
  not_progressing,           ///< fixed-point iteration stalled
  infeasible,                ///< no feasible parameter in the search bracket
  precondition_failed,       ///< runtime check of a stated assumption failed
  no_worst_case_family,      ///< no matching adversarial instance family
  parse_error,               ///< malformed JSON / CLI input
};

/// Stable kebab-case name for an errc (used in CLI status columns).
const char* errc_name(errc code) noexcept;

/// Library exception type: an errc plus a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

/// Throws Error(code, message).  Exists so call sites read as one line.
[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* errc_name(errc code) noexcept {
  switch (code) {
    case errc::invalid_argument: return "invalid-argument";
    case errc::unsupported_for_discrete: return "unsupported-for-discrete";
    case errc::divergent_tail: return "divergent-tail";
    case errc::divergent_mean: return "divergent-mean";
    case errc::degenerate_curvature: return "degenerate-curvature";
    case errc::arity_mismatch: return "arity-mismatch";
    case errc::search_too_large: return "search-too-large";
    case errc::not_progressing: return "not-progressing";
    case errc::infeasible: return "infeasible";
    case errc::precondition_failed: return "precondition-failed";
    case errc::no_worst_case_family: return "no-worst-case-family";
    case errc::parse_error: return "parse-error";
  }
  return "unknown";
}

}  // namespace stopping
