#pragma once

#include <stdexcept>
#include <string>

namespace fks {

enum class ErrorKind {
  domain,
  pole,
  overflow,
  accuracy_not_met,
  quadrature_nonconvergence,
  tail_truncation,
  nonuniform_mesh,
  size_mismatch,
  policy_violation,
  symbol_evaluation,
  nonpositive_time,
  band_too_narrow,
  out_of_range,
  radius_too_large,
  constraint_violation,
  missing_history,
  numerical,
  window_invalid,
  regression_conditioning,
  mismatched_config,
  gate_failure,
  config,
  io,
};

const char* to_string(ErrorKind kind) noexcept;

/// Every library failure is reported through this type; kind() is stable and
/// machine-checkable, what() carries the human-readable detail.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::domain: return "domain";
    case ErrorKind::pole: return "pole";
    case ErrorKind::overflow: return "overflow";
    case ErrorKind::accuracy_not_met: return "accuracy-not-met";
    case ErrorKind::quadrature_nonconvergence: return "quadrature-nonconvergence";
    case ErrorKind::tail_truncation: return "tail-truncation";
    case ErrorKind::nonuniform_mesh: return "nonuniform-mesh";
    case ErrorKind::size_mismatch: return "size-mismatch";
    case ErrorKind::policy_violation: return "policy-violation";
    case ErrorKind::symbol_evaluation: return "symbol-evaluation";
    case ErrorKind::nonpositive_time: return "nonpositive-time";
    case ErrorKind::band_too_narrow: return "band-too-narrow";
    case ErrorKind::out_of_range: return "out-of-range";
    case ErrorKind::radius_too_large: return "radius-too-large";
    case ErrorKind::constraint_violation: return "constraint-violation";
    case ErrorKind::missing_history: return "missing-history";
    case ErrorKind::numerical: return "numerical";
    case ErrorKind::window_invalid: return "window-invalid";
    case ErrorKind::regression_conditioning: return "regression-conditioning";
    case ErrorKind::mismatched_config: return "mismatched-config";
    case ErrorKind::gate_failure: return "gate-failure";
    case ErrorKind::config: return "config";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

}  // namespace fks
