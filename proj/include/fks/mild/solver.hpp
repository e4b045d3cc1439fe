#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fks/mild/propagator.hpp"

namespace fks::mild {

/// Size of a trajectory (or of a difference of two). Default:
/// max_n (‖u_n‖₂ + ‖v_n‖₂ + ‖w_n‖₂).
using TrajectoryNorm = std::function<double(const Trajectory&)>;
double default_trajectory_norm(const Trajectory& traj);

/// Componentwise a - b, node by node.
Trajectory difference(const Trajectory& a, const Trajectory& b);

struct PicardIterate {
  int iter = 0;
  double delta = 0.0;  ///< ‖X_k - X_{k-1}‖ / ‖X_k‖ (0 when ‖X_k‖ = 0)
  double ratio = 0.0;  ///< delta_k / delta_{k-1}; NaN for k = 1
};

struct SolveResult {
  Trajectory trajectory;  ///< last iterate, nodes 0..n_steps
  std::vector<PicardIterate> iterations;
  bool converged = false;
  std::string message;  ///< why iteration stopped
};

struct PicardOptions {
  TrajectoryNorm norm;          ///< empty -> default_trajectory_norm
  double divergence_bound = 1e12;  ///< delta above this counts as divergence
};

/// Linear part S(t_n)(u0, v0, w0) at every node.
Trajectory linear_trajectory(const SolverState& init, const SolverConfig& cfg);

/// Fixed-point iteration of the whole-trajectory mild map. Iterate 0 is the
/// linear trajectory; iterate k rebuilds every N_j from iterate k-1. Stops on
/// delta < picard_tol (converged), picard_max, or divergence (non-finite
/// fields or delta > divergence_bound). Never throws on divergence.
SolveResult picard_solve(const SolverState& init, const SolverConfig& cfg, const PicardOptions& opts = {});

/// Sequential march: the exact fixed point of the discrete map, built node by
/// node. Throws ErrorKind::numerical if the fields blow up.
Trajectory march(const SolverState& init, const SolverConfig& cfg);

/// Diagnostics at one node.
struct NodeDiagnostics {
  int t_index = 0;
  double t = 0.0;
  double div_u = 0.0;  ///< max |∇·u|
  double norm_u = 0.0, norm_v = 0.0, norm_w = 0.0;  ///< L²
  double min_v = 0.0;
};

NodeDiagnostics diagnose(const SolverState& s, const SolverConfig& cfg);

/// Caputo residual of a trajectory against the differential form
///   ∂_t^α y + (-Δ)^{β/2} y + N(y) = 0,
/// with the L1 scheme for ∂_t^α, evaluated on nodes n >= first_node. Values
/// are L² norms relative to ‖(-Δ)^{β/2} y_n‖ + ‖N_n‖ (absolute if that is 0).
struct CaputoResidual {
  int first_node = 0;
  std::vector<double> u, v, w;  ///< indexed by node - first_node
  double max_u = 0.0, max_v = 0.0, max_w = 0.0;
  double max() const;
};

/// first_node < 0 selects the interior window n >= n_steps/4 (and >= 1).
CaputoResidual caputo_residual(const Trajectory& traj, const SolverConfig& cfg, int first_node = -1);

/// CSV with header
/// iter,t_index,t,picard_ratio,div_u,norm_u,norm_v,norm_w,residual_u,residual_v,residual_w
/// one row per node of the final iterate; residual columns are empty outside
/// the residual window.
std::string diagnostics_csv(const SolveResult& result, const SolverConfig& cfg);

}  // namespace fks::mild
