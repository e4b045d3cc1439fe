#pragma once

namespace fks::specfun {

/// Error targets for series and quadrature based evaluations.
struct AccuracyBudget {
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_terms = 5000;

  /// Throws ErrorKind::domain unless abs_tol + rel_tol > 0 and max_terms >= 16.
  void validate() const;
  bool met(double error_estimate, double value) const;
};

enum class MlRegime {
  automatic,
  taylor,      ///< power series, used for |z| <= taylor_radius when cancellation allows
  quadrature,  ///< real-axis integral representation (moderate negative z)
  asymptotic,  ///< algebraic expansion -sum z^{-k}/Γ(β-αk), z <= asymptotic_threshold
};

inline constexpr double ml_taylor_radius = 4.0;
inline constexpr double ml_asymptotic_threshold = -40.0;
inline constexpr double ml_z_max = 5.0;
inline constexpr int ml_asymptotic_terms = 10;

/// Two-parameter Mittag-Leffler function E_{α,β}(z) for real z <= 5,
/// α in (0, 1], β > 0.
///
/// Regime selection (automatic): Taylor series for |z| <= 4 whenever its
/// rounding estimate meets the budget; the algebraic asymptotic series for
/// z <= -40 when its first omitted term meets the budget; otherwise the
/// real-axis integral representation. Throws ErrorKind::accuracy_not_met if the
/// selected route cannot meet the budget.
double mittag_leffler(double alpha, double beta, double z, const AccuracyBudget& budget = {});

/// Forces a regime; throws ErrorKind::accuracy_not_met if that regime cannot
/// deliver the budget at z. Used for crossover checks.
double mittag_leffler(double alpha, double beta, double z, MlRegime regime,
                      const AccuracyBudget& budget = {});

/// Regime the automatic evaluator settles on for (α, β, z).
MlRegime mittag_leffler_regime(double alpha, double beta, double z, const AccuracyBudget& budget = {});

}  // namespace fks::specfun
