#pragma once

#include "fks/spectral/grid.hpp"

namespace fks::spaces {

using spectral::Field;
using spectral::GridSpec;

/// Unnormalized bump g(r) = h(r - 2/3) h(3 - r), h(x) = exp(-1/x) for x > 0,
/// supported on (2/3, 3).
double lp_profile(double r);

/// Dyadic Littlewood-Paley shells φ̂_k(ξ) = g(2^{-k}|ξ|) / Σ_{j∈Z} g(2^{-j}|ξ|),
/// restricted to the shells that touch the lattice band (0, max_xi].
struct LPBank {
  GridSpec grid;
  int k_min = 0;
  int k_max = -1;
  double max_xi = 0.0;  ///< upper edge of the resolved band (physical |ξ|)

  int shells() const { return k_max - k_min + 1; }
  /// φ̂_k at frequency magnitude |ξ| (0 at ξ = 0).
  double value(int k, double xi_norm) const;
};

/// Builds the bank for a grid. max_xi = 0 takes the full lattice band
/// (2π/L)(n/2)√d. Throws ErrorKind::band_too_narrow with fewer than 3 shells.
LPBank lp_bank(const GridSpec& g, double max_xi = 0.0);

/// Δ_k f as a field (components kept). Throws ErrorKind::out_of_range for k
/// outside [k_min, k_max], ErrorKind::size_mismatch on a grid mismatch.
Field lp_project(const Field& f, int k, const LPBank& bank);

}  // namespace fks::spaces
