#pragma once

#include <cstddef>
#include <vector>

namespace fks::specfun {

/// Samples y(t) on strictly increasing nonnegative nodes.
struct TimeSeries {
  std::vector<double> t;
  std::vector<double> y;

  TimeSeries() = default;
  TimeSeries(std::vector<double> times, std::vector<double> values);

  std::size_t size() const { return t.size(); }
  /// Throws ErrorKind::size_mismatch / domain if the invariants fail.
  void validate() const;
  bool is_uniform(double rel_tol = 1e-9) const;
};

/// Uniform mesh 0, dt, ..., n*dt with y = f(t).
template <class F>
TimeSeries sample_uniform(F&& f, double t_end, std::size_t n_intervals) {
  std::vector<double> t(n_intervals + 1), y(n_intervals + 1);
  for (std::size_t i = 0; i <= n_intervals; ++i) {
    t[i] = t_end * static_cast<double>(i) / static_cast<double>(n_intervals);
    y[i] = f(t[i]);
  }
  return TimeSeries(std::move(t), std::move(y));
}

/// Riemann-Liouville integral g_α * y by product integration against the
/// piecewise-linear interpolant of y. Exact for linear y. Value 0 at t_0.
TimeSeries rl_integral(const TimeSeries& series, double alpha);

/// L1-scheme Caputo derivative d/dt (g_{1-α} * (y - y(0))). Exact for linear y;
/// O(Δt^{2-α}) on smooth data. Value 0 at t_0.
TimeSeries caputo_l1(const TimeSeries& series, double alpha);

/// L1 weights b_k = (k+1)^{1-α} - k^{1-α}, k = 0..n-1.
std::vector<double> l1_weights(std::size_t n, double alpha);

/// |∫_0^T e^{-st} t^{β-1} E_{α,β}(-a t^α) dt - s^{α-β}/(s^α + a)| with T chosen
/// so that the neglected tail is below 1e-10. Throws ErrorKind::tail_truncation
/// if no such T below 1e6 exists, ErrorKind::domain unless s > a^{1/α}.
double laplace_identity_residual(double alpha, double beta, double a, double s);

}  // namespace fks::specfun
