#pragma once

#include <complex>
#include <functional>

#include "fks/spectral/grid.hpp"

namespace fks::spectral {

enum class ZeroModePolicy { zero, identity, custom };

/// Fourier multiplier σ(D). Exactly one of scalar / matrix is set. The symbol
/// is only evaluated at nonzero lattice frequencies; the ξ = 0 action comes
/// from the policy (custom multiplies by custom_value, matrix symbols then act
/// as custom_value times the identity).
struct MultiplierSpec {
  /// σ(ξ, |ξ|) with ξ a pointer to d frequency components.
  std::function<cplx(const double* xi, double norm)> scalar;
  /// Writes the d×d matrix σ(ξ) row-major into out.
  std::function<void(const double* xi, double norm, cplx* out)> matrix;
  ZeroModePolicy zero_mode = ZeroModePolicy::zero;
  cplx custom_value = 0.0;

  static MultiplierSpec from_scalar(std::function<cplx(const double*, double)> s,
                                    ZeroModePolicy p = ZeroModePolicy::zero, cplx custom = 0.0);
  static MultiplierSpec from_matrix(std::function<void(const double*, double, cplx*)> m,
                                    ZeroModePolicy p = ZeroModePolicy::zero, cplx custom = 0.0);
};

/// Pointwise product in frequency. Throws ErrorKind::symbol_evaluation (with
/// the offending frequency) if the symbol throws or returns a non-finite value,
/// ErrorKind::size_mismatch for a matrix symbol on a non-vector field.
SpectralCoeffs apply_multiplier(const SpectralCoeffs& F, const MultiplierSpec& m);

/// |ξ|^order. Negative order requires ZeroModePolicy::zero
/// (ErrorKind::policy_violation otherwise).
SpectralCoeffs frac_laplacian(const SpectralCoeffs& F, double order, ZeroModePolicy policy = ZeroModePolicy::zero);
Field frac_laplacian(const Field& f, double order, ZeroModePolicy policy = ZeroModePolicy::zero);

/// Spectral derivative i ξ_axis; the Nyquist plane of that axis is zeroed.
SpectralCoeffs derivative(const SpectralCoeffs& F, int axis);

/// 2/3 rule: keep only the modes with every |k_i| <= n/3.
void dealias(SpectralCoeffs& F);
bool dealias_kept(const GridSpec& g, const std::array<int, 3>& k);

SpectralCoeffs gradient(const SpectralCoeffs& scalar);
SpectralCoeffs divergence(const SpectralCoeffs& vec);
Field gradient(const Field& scalar);
Field divergence(const Field& vec);
Field laplacian(const Field& f);

/// Pointwise product of two fields in real space followed by 2/3 dealiasing;
/// a scalar times a vector (or vector times scalar) is allowed.
SpectralCoeffs dealiased_product(const Field& a, const Field& b);

/// (U·∇) f for scalar or vector f, products dealiased.
Field advect(const Field& U, const Field& f);
/// ∇·(U ⊗ f) = Σ_j ∂_j (U_j f), products dealiased.
Field conservative_advect(const Field& U, const Field& f);
SpectralCoeffs conservative_advect_coeffs(const Field& U, const Field& f);

/// Leray projector δ_jk - ξ_j ξ_k/|ξ|²; the zero mode is left untouched.
/// Throws ErrorKind::size_mismatch on scalar input.
SpectralCoeffs leray_project(const SpectralCoeffs& F);
Field leray_project(const Field& f);

/// |ξ|^θ e^{-t|ξ|^β}. θ = 0 keeps the mean, θ > 0 removes it.
/// Throws ErrorKind::nonpositive_time for t <= 0, ErrorKind::domain for β outside (0, 2].
SpectralCoeffs heat_op(const SpectralCoeffs& F, double t, double beta, double theta_order = 0.0);
Field heat_op(const Field& f, double t, double beta, double theta_order = 0.0);

/// Samples of K_{t,θ}(x) = (2π)^{-d/2} ∫ |ξ|^θ e^{-t|ξ|^β} e^{ix·ξ} dξ on the
/// lattice (origin at index 0), obtained from a unit-mass spike.
Field fractional_heat_kernel(const GridSpec& g, double t, double beta, double theta_order = 0.0);

/// Unit-mass lattice spike 1/h^d at the origin.
Field spike(const GridSpec& g);

}  // namespace fks::spectral
