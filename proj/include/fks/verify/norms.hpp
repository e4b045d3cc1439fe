#pragma once

#include <array>

#include "fks/mild/solver.hpp"
#include "fks/spaces/morrey.hpp"
#include "fks/verify/admissible.hpp"

namespace fks::verify {

using spectral::Field;
using mild::SolverState;

struct NormOptions {
  spaces::MorreyOptions morrey;
  double max_xi = 0.0;  ///< LP band edge; 0 = grid default
};

/// Five summands in a fixed order.
struct FiveTerms {
  std::array<double, 5> terms{};
  double total() const { return terms[0] + terms[1] + terms[2] + terms[3] + terms[4]; }
};

/// Data size of (u0, v0, w0, φ):
///   [0] ‖u0‖ in N^{-β1}_{r1,λ,∞}, [1] ‖v0‖ in N^{-β2}_{r2,λ,∞},
///   [2] ‖∇w0‖ in N^{-β3}_{r3,λ,∞}, [3] ‖w0‖ in M^{2-β}_{(d-λ)/(2-β),λ},
///   [4] ‖∇φ‖ in M_{d-λ,λ}.
/// Throws ErrorKind::constraint_violation if the exponents are not admissible.
FiveTerms data_norm(const SolverState& s, const Field& phi, const AdmissibleExponents& e, const NormOptions& o = {});

/// Weighted summands of a state at time t (the g / f surrogates):
///   [0] t^{χ1/2}‖u‖_{M_{q1,λ}}, [1] t^{χ2/2}‖v‖_{M_{q2,λ}}, [2] t^{χ3/2}‖∇w‖_{M_{q3,λ}},
///   [3] ‖w‖ in M^{2-β}_{(d-λ)/(2-β),λ}, [4] Besov triple of (u, v, ∇w) as in data_norm.
FiveTerms weighted_terms(const SolverState& s, double t, const AdmissibleExponents& e, const NormOptions& o = {});

/// Discrete product-space norm of a trajectory on its nodes: sup of the Besov
/// parts plus sup of the weighted Morrey parts, plus sup of the w Sobolev-Morrey
/// part, per component.
double trajectory_space_norm(const mild::Trajectory& traj, const mild::SolverConfig& cfg, const AdmissibleExponents& e,
                             const NormOptions& o = {});

/// Rescales (u0, v0, w0, φ) by a common factor so data_norm(...).total() equals
/// kappa. Zero data stays zero. Returns the factor used.
double scale_to_kappa(SolverState& s, Field& phi, double kappa, const AdmissibleExponents& e, const NormOptions& o = {});

}  // namespace fks::verify
