#pragma once

#include <string>
#include <vector>

#include "fks/mild/solver.hpp"
#include "fks/verify/norms.hpp"

namespace fks::verify {

struct AsymptoticsOptions {
  double kappa_gate = 1e-2;  ///< both data triples need data_norm <= this
  double tol_f = 0.05;       ///< final-window level, relative to the first node
  double tol_g = 0.05;
  double reverse_constant = 4.0;  ///< g small => f below tol_f * this
  int final_window = 0;           ///< nodes; 0 = max(2, n_steps/8)
  NormOptions norms;
};

struct AsymptoticsReport {
  std::vector<double> t;              ///< nodes 1..n_steps
  std::vector<FiveTerms> f, g;
  std::vector<double> f_total, g_total;
  int f_transient = 0, g_transient = 0;  ///< index after which the series never increases
  bool f_monotone = false, g_monotone = false;  ///< transient within the first half
  double f_final_ratio = 0.0, g_final_ratio = 0.0;  ///< final-window max / first value
  bool forward_holds = true;   ///< f small => g small
  bool reverse_holds = true;   ///< g small => f < tol_f * reverse_constant
  double recorded_constant = 0.0;  ///< f_final_ratio / g_final_ratio
  double max_g_over_f = 0.0, max_f_over_g = 0.0;
  std::string csv() const;  ///< t,f_total,g_total,f_1..f_5,g_1..g_5
};

/// f: weighted summands of S(t)(data difference); g: weighted summands of the
/// solution difference. Throws ErrorKind::gate_failure when either triple
/// exceeds the gate, ErrorKind::numerical when a solve fails to converge,
/// ErrorKind::constraint_violation for an inadmissible tuple.
AsymptoticsReport asymptotics_experiment(const mild::SolverConfig& cfg, const AdmissibleExponents& e,
                                         const mild::SolverState& a, const mild::SolverState& b,
                                         const AsymptoticsOptions& opts = {});

/// First index after which xs is nonincreasing (relative slack 1e-9).
int transient_index(const std::vector<double>& xs);

}  // namespace fks::verify
