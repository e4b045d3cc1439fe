#pragma once

#include <vector>

#include "fks/spaces/littlewood_paley.hpp"
#include "fks/spaces/morrey.hpp"

namespace fks::spaces {

/// 𝓝̇^s_{p,λ,r}: p in (1, ∞), 0 <= λ < d, r in [1, ∞] (r = inf for the sup).
struct BesovParams {
  double s = 0.0;
  double p = 2.0;
  double lambda = 0.0;
  double r = 2.0;
  /// Throws ErrorKind::domain.
  void validate(int d) const;
  MorreyParams morrey() const { return {p, lambda}; }
};

/// 2^{ks} ‖Δ_k f‖_{p,λ} for k = k_min..k_max.
std::vector<double> besov_shell_terms(const Field& f, const BesovParams& bp, const LPBank& bank,
                                      const MorreyOptions& opts = {});

/// ℓ^r over shells of 2^{ks}‖Δ_k f‖_{p,λ}. The mean is dropped (every shell
/// vanishes at ξ = 0).
double besov_morrey_norm(const Field& f, const BesovParams& bp, const LPBank& bank, const MorreyOptions& opts = {});

/// ℓ^r norm of a nonnegative sequence (r = inf: max).
double sequence_norm(const std::vector<double>& a, double r);

}  // namespace fks::spaces
