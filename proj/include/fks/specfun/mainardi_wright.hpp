#pragma once

namespace fks::specfun {

inline constexpr double mw_alpha_max = 0.95;
inline constexpr double mw_abs_tol = 1e-10;

enum class MwMethod {
  automatic,  ///< series while its cancellation estimate is below tolerance, else integral
  series,     ///< reflected-Gamma power series with compensated summation
  integral,   ///< positive Zolotarev-Kanter integral over (0, π)
};

/// Mainardi-Wright function M_α(θ) for α in (0, 0.95], θ >= 0.
///
/// Absolute accuracy 1e-10. The series route is validated wherever its
/// rounding estimate stays below the tolerance (see mainardi_wright_series_limit);
/// past that point the integral route takes over, whose integrand is positive
/// and cancellation free. Throws ErrorKind::domain outside the parameter range
/// and ErrorKind::accuracy_not_met if a forced route cannot meet the tolerance.
double mainardi_wright(double alpha, double theta, MwMethod method = MwMethod::automatic);

/// Largest θ (to within a few percent) for which the series alone meets the
/// absolute tolerance at this α. Documents the validated series region.
double mainardi_wright_series_limit(double alpha);

/// θ beyond which M_α(θ) < 1e-25; used to truncate integrals over (0, ∞).
double mainardi_wright_cutoff(double alpha);

/// ∫_0^∞ M_α(θ) θ^ρ dθ on an exponentially mapped trapezoid grid with
/// quad_nodes nodes, checked against a refined grid. Throws
/// ErrorKind::quadrature_nonconvergence if the two disagree beyond 1e-8
/// relative.
double wright_moment(double alpha, double rho, int quad_nodes = 400);

/// Closed form Γ(1+ρ)/Γ(1+αρ) of the same moment.
double wright_moment_exact(double alpha, double rho);

}  // namespace fks::specfun
