#pragma once

#include <vector>

#include "fks/specfun/mittag_leffler.hpp"
#include "fks/spectral/grid.hpp"

namespace fks::spectral {

/// S(t) ↔ E_{α,1}(-t^α|ξ|^β), P(t) ↔ E_{α,α}(-t^α|ξ|^β).
enum class OperatorKind { S, P };

/// Second Mittag-Leffler index of the kind (1 for S, α for P).
double kind_beta(OperatorKind kind, double alpha);

/// Scalar symbol |ξ|^θ E_{α,·}(-t^α |ξ|^β) at one frequency magnitude.
double solution_symbol(double xi_norm, double t, const FracParams& p, OperatorKind kind, double theta_order = 0.0);

/// Applies the per-mode multiplier |ξ|^θ E_{α,·}(-t^α|ξ|^β); Mittag-Leffler
/// values are computed once per distinct |k|². At α = 1 the S symbol is the
/// heat symbol. Throws ErrorKind::nonpositive_time for t <= 0.
SpectralCoeffs solution_op(const SpectralCoeffs& F, double t, const FracParams& p, OperatorKind kind,
                           double theta_order = 0.0);
Field solution_op(const Field& f, double t, const FracParams& p, OperatorKind kind, double theta_order = 0.0);

struct SubordinationOptions {
  double step = 0.1;       ///< starting trapezoid step in s = log θ (halved up to 4 times)
  double rel_tol = 1e-9;   ///< allowed step-halving change per symbol
  double abs_tol = 1e-13;
};

/// Per-symbol subordination integral ∫_0^∞ w(θ) e^{-θ x} dθ with w = M_α
/// (kind S) or αθM_α (kind P), on an exponentially mapped trapezoid rule with
/// step-halving check. Throws ErrorKind::quadrature_nonconvergence.
class Subordinator {
 public:
  Subordinator(double alpha, OperatorKind kind, const SubordinationOptions& opts = {});
  /// ∫ w(θ) e^{-θ x} dθ for x >= 0.
  double operator()(double x) const;
  /// ∫ w(θ) dθ (1 for S, αΓ(2)/Γ(1+α) for P).
  double mass() const { return (*this)(0.0); }

 private:
  bool settled(double x, double* fine = nullptr, double* diff = nullptr) const;
  double alpha_;
  OperatorKind kind_;
  SubordinationOptions opts_;
  std::vector<double> theta_, weight_;  // fine grid; even entries form the coarse grid
  double h_ = 0.0;
};

/// Independent evaluation of S/P through the subordination integral over
/// fractional-heat symbols: Σ_i w_i e^{-θ_i t^α |ξ|^β}.
SpectralCoeffs subordinate_apply(const SpectralCoeffs& F, double t, const FracParams& p, OperatorKind kind,
                                 const SubordinationOptions& opts = {});
Field subordinate_apply(const Field& f, double t, const FracParams& p, OperatorKind kind,
                        const SubordinationOptions& opts = {});

/// W = b^α E_{α,α+1}(-λ b^α) - a^α E_{α,α+1}(-λ a^α) for each λ, the exact
/// integral of s^{α-1} E_{α,α}(-λ s^α) over [a, b]. Throws ErrorKind::domain
/// unless 0 <= a < b.
std::vector<double> duhamel_weights(double lag_a, double lag_b, const FracParams& p,
                                    const std::vector<double>& lambdas);

/// F(s) = s^α E_{α,α+1}(-λ s^α), the antiderivative used by duhamel_weights.
double duhamel_primitive(double s, double lambda, double alpha);

}  // namespace fks::spectral
