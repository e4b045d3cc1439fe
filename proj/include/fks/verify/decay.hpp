#pragma once

#include <string>
#include <vector>

#include "fks/spaces/morrey.hpp"
#include "fks/spectral/grid.hpp"

namespace fks::verify {

using spectral::Field;
using spectral::FracParams;

enum class DecayKind { heat, S, P };
const char* to_string(DecayKind k);

/// Target norm: Morrey M_{p,λ} (L^p when λ = 0), or Besov-Morrey
/// N^s_{p,λ,r} when besov is set.
struct NormSpec {
  double p = 2.0;
  double lambda = 0.0;
  bool besov = false;
  double s = 0.0;
  double r = 1.0;
  spaces::MorreyOptions morrey;
  std::string describe() const;
};

/// Sampling window in operator time t. For S and P the spatial scale is
/// t^{α/β}, so the window bounds are imposed on τ = t^α.
struct DecayWindow {
  double t_a = 0.0;
  double t_b = 0.0;
  int samples = 12;  ///< log-spaced, >= 8
};

struct DecayRequest {
  DecayKind kind = DecayKind::heat;
  double theta_order = 0.0;
  FracParams params{1.0, 2.0};  ///< heat uses params.beta only
  NormSpec norm;
  double s1 = 0.0;  ///< data regularity (0 for point masses)
  double p1 = 1.0;  ///< data integrability (1 for point masses)
};

struct DecayReport {
  std::string operator_desc;
  std::string norm_desc;
  double t_a = 0.0, t_b = 0.0;
  std::vector<double> t, norm;
  double measured_slope = 0.0;
  double predicted_slope = 0.0;
  double rel_err = 0.0;
  std::string csv() const;  ///< t,norm,log_t,log_norm rows, then the summary row
};

/// -(a/β)(ϑ + s2 - s1 + (d-λ)/p1 - (d-λ)/p2), a = α for S/P and 1 for heat.
/// Throws ErrorKind::domain at or beyond the range where the smoothing bound
/// holds (exponent sum must lie in (0, β), (0, 2β) for P).
double predicted_slope(const DecayRequest& req, int d);

/// Default window: effective time in [4h^β, (L/16)^β].
DecayWindow default_window(const spectral::GridSpec& g, const DecayRequest& req, int samples = 12);

/// Throws ErrorKind::window_invalid unless 4h^β <= τ_a < τ_b and τ_b^{1/β} <= L/8.
void check_window(const spectral::GridSpec& g, const DecayRequest& req, const DecayWindow& w);

/// Norm of the operator applied to f at time t.
double evolved_norm(const Field& f, double t, const DecayRequest& req);

/// Least-squares slope of log(norm) on log(t) at the window samples, no window
/// or prediction checks. Throws ErrorKind::regression_conditioning for fewer
/// than 8 samples, a degenerate window, or a non-positive norm.
DecayReport measure_decay(const Field& f, const DecayRequest& req, const DecayWindow& w);

/// measure_decay after check_window, with predicted slope and relative error.
DecayReport decay_exponent(const Field& f, const DecayRequest& req, const DecayWindow& w);

/// Mean-free unit point mass at the origin (δ - 1/L^d).
Field centered_spike(const spectral::GridSpec& g);

}  // namespace fks::verify
