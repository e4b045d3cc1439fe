#pragma once

#include <vector>

#include "fks/mild/solver.hpp"

namespace fks::mild {

/// The rescaled problem: box L/λ, same n, T/λ^{β/α},
/// u0 -> λ^{β-1} u0(λ·), v0 -> λ^{2(β-1)} v0(λ·), w0 -> w0(λ·), φ -> φ(λ·).
/// Grid indices and mesh nodes line up one to one with the original.
struct ScaledProblem {
  SolverConfig config;
  SolverState init;
};

ScaledProblem scaled_problem(const SolverConfig& cfg, const SolverState& init, double lambda);

struct ScalingReport {
  double lambda = 1.0;
  double discrepancy = 0.0;  ///< max over nodes and fields of relative L∞ error
  bool converged = true;     ///< both solves converged
};

/// Max relative L∞ gap between solution B at node n and the rescaled solution A
/// at the same node. Throws ErrorKind::mismatched_config when grids or meshes
/// do not correspond.
double scaling_discrepancy(const Trajectory& a, const SolverConfig& cfg_a, const Trajectory& b,
                           const SolverConfig& cfg_b, double lambda);

/// Solves the base problem and each rescaled one with the same Picard settings.
std::vector<ScalingReport> scaling_family_check(const SolverConfig& cfg, const SolverState& init,
                                                const std::vector<double>& lambdas);

}  // namespace fks::mild
