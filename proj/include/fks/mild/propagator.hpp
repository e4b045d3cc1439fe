#pragma once

#include <vector>

#include "fks/mild/state.hpp"

namespace fks::mild {

/// Precomputed symbols on the uniform mesh t_n = nΔt, one column per distinct
/// |k|^2 on the grid:
///   S_n(ξ) = E_{α,1}(-t_n^α |ξ|^β),
///   W_m(ξ) = ∫_{(m-1)Δt}^{mΔt} s^{α-1} E_{α,α}(-s^α |ξ|^β) ds,
/// so that with N held constant on each [t_j, t_{j+1})
///   ŷ_n = S_n ŷ_0 - Σ_{j<n} W_{n-j} N̂_j.
class Propagator {
 public:
  explicit Propagator(const SolverConfig& cfg);

  const SolverConfig& config() const { return cfg_; }
  int steps() const { return cfg_.n_steps; }

  /// Symbol values by node and |k|^2 (k2 must occur on the grid).
  double s_symbol(int n, int k2) const;
  double w_symbol(int m, int k2) const;

  /// S_n applied to every component of init.
  Spectra linear(const Spectra& init, int n) const;
  /// Node n from init and history entries 0..n-1. Throws
  /// ErrorKind::missing_history when fewer entries are stored,
  /// ErrorKind::out_of_range when n is off the mesh.
  Spectra step(const Spectra& init, const NonlinearHistory& history, int n) const;

 private:
  std::size_t column(int k2) const;

  SolverConfig cfg_;
  std::vector<int> col_of_k2_;        // -1 where absent
  std::vector<std::size_t> mode_col_; // per grid point
  std::size_t ncols_ = 0;
  std::vector<double> S_;  // (n_steps + 1) x ncols
  std::vector<double> W_;  // (n_steps + 1) x ncols, row 0 unused
};

}  // namespace fks::mild
