#pragma once

#include "fks/spectral/grid.hpp"

namespace fks::spectral {

/// Forward transform of every component, F_k = (1/N) Σ_j f_j e^{-i ξ_k·x_j}.
SpectralCoeffs transform(const Field& f);

/// Inverse transform; the imaginary part (roundoff for conjugate-symmetric
/// input) is dropped.
Field inverse_transform(const SpectralCoeffs& F);

/// max_k |F_k - conj(F_{-k})| / max_k |F_k| over all components (0 for zero input).
double conjugate_symmetry_error(const SpectralCoeffs& F);

}  // namespace fks::spectral
