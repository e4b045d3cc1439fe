#pragma once

#include <functional>

namespace fks::specfun {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  ///< difference between the last two refinement levels
  int levels = 0;
  bool converged = false;
};

struct QuadratureOptions {
  double rel_tol = 1e-13;
  double abs_tol = 0.0;
  int max_level = 9;
};

using Integrand = std::function<double(double)>;

/// Double-exponential (tanh-sinh) rule on the finite interval [a, b].
///
/// The integrand is called as f(x, dist_a, dist_b) where dist_a = x - a and
/// dist_b = b - x are computed without cancellation, so algebraic endpoint
/// singularities can be evaluated accurately. Level k halves the step of
/// level k-1 and reuses its nodes.
QuadratureResult tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Convenience overload for integrands that only need x.
QuadratureResult tanh_sinh(const Integrand& f, double a, double b, const QuadratureOptions& opts = {});

/// Double-exponential (exp-sinh) rule on [a, +inf). f receives the offset
/// x - a, so the caller adds a itself and never loses digits near the end.
QuadratureResult exp_sinh(const Integrand& f_of_offset, const QuadratureOptions& opts = {});

}  // namespace fks::specfun
