#pragma once

#include "fks/mild/state.hpp"

namespace fks::mild {

/// N_u = ℙ(∇·(u⊗u) + v∇φ) with its mean removed,
/// N_v = u·∇v + ∇·(v∇B(w)),  B(w) = (-Δ)^{(β-2)/2} w with the mean dropped,
/// N_w = u·∇w ± ((-Δ)^{(2-β)/2} w) v  (+ for consumption).
/// Products are formed in real space and 2/3-dealiased when dealias is set.
/// Throws ErrorKind::numerical if any input or output is not finite.
NonlinearSpectra nonlinear_terms(const SolverState& s, const Field& phi, const FracParams& p,
                                 WReaction reaction = WReaction::consumption, bool dealias = true);

}  // namespace fks::mild
