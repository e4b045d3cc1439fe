#pragma once

#include <utility>
#include <vector>

#include "fks/spectral/grid.hpp"

namespace fks::spaces {

using spectral::Field;

/// 𝓜_{p,λ}: p >= 1, 0 <= λ < d.
struct MorreyParams {
  double p = 2.0;
  double lambda = 0.0;
  /// Throws ErrorKind::domain.
  void validate(int d) const;
};

/// Discretization of the double sup.
struct MorreyOptions {
  int center_stride = 4;    ///< centers on every stride-th lattice point per axis
  int radii = 0;            ///< how many dyadic radii to use; 0 = all down to 4 cells
  double max_radius = 0.0;  ///< largest radius; 0 = L/2
};

/// sup over centers and radii R in {R_max, R_max/2, ...} (R >= 4h) of
/// R^{-λ/p} (h^d Σ_{|x-x0| <= R} |f|^p)^{1/p}, periodic balls. λ = 0 is the
/// discrete L^p norm. Throws ErrorKind::radius_too_large if max_radius > L/2.
double morrey_norm(const Field& f, const MorreyParams& mp, const MorreyOptions& opts = {});

/// The per-radius sups behind morrey_norm, largest radius first.
std::vector<std::pair<double, double>> morrey_profile(const Field& f, const MorreyParams& mp,
                                                      const MorreyOptions& opts = {});

/// ‖(-Δ)^{s/2} f‖_{p,λ}. s < 0 needs a mean-free f (ErrorKind::domain).
double sobolev_morrey_norm(const Field& f, double s, const MorreyParams& mp, const MorreyOptions& opts = {});

}  // namespace fks::spaces
