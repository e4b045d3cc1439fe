#pragma once

#include <vector>

#include "fks/spectral/grid.hpp"

namespace fks::mild {

using spectral::Field;
using spectral::FracParams;
using spectral::GridSpec;
using spectral::SpectralCoeffs;

/// Sign of the w reaction term inside the subtracted Duhamel integral.
/// consumption: N_w = u·∇w + ((-Δ)^{(2-β)/2}w) v  (the mild formulation);
/// production flips the reaction term (the sign displayed in the PDE form).
enum class WReaction { consumption, production };

struct SolverConfig {
  FracParams params;
  GridSpec grid;
  double T = 1.0;
  int n_steps = 50;
  int picard_max = 20;
  double picard_tol = 1e-10;
  bool dealias = true;
  bool nonlinear = true;  ///< false drops every nonlinearity (linear runs)
  WReaction w_reaction = WReaction::consumption;
  Field phi;  ///< time-independent potential; empty values = 0

  double dt() const { return T / n_steps; }
  double time(int n) const { return T * n / n_steps; }
  /// Throws ErrorKind::domain / size_mismatch.
  void validate() const;
  /// phi, or a zero scalar field when unset
  Field potential() const;
};

/// (u, v, w) at mesh node t_index.
struct SolverState {
  int t_index = 0;
  Field u;  ///< vector
  Field v;  ///< scalar
  Field w;  ///< scalar

  static SolverState zero(const GridSpec& g);
  /// Throws ErrorKind::size_mismatch on malformed or inconsistent fields.
  void validate() const;
};

using Trajectory = std::vector<SolverState>;

/// (u, v, w) or their nonlinearities in Fourier space, one node.
struct Spectra {
  SpectralCoeffs u;
  SpectralCoeffs v;
  SpectralCoeffs w;
};
using NonlinearSpectra = Spectra;

Spectra to_spectra(const SolverState& s);
SolverState to_state(const Spectra& s, int t_index);

/// Append-only store of nonlinearity spectra, node j at index j.
class NonlinearHistory {
 public:
  void push(NonlinearSpectra s) { entries_.push_back(std::move(s)); }
  std::size_t size() const { return entries_.size(); }
  const NonlinearSpectra& at(std::size_t j) const { return entries_.at(j); }

 private:
  std::vector<NonlinearSpectra> entries_;
};

}  // namespace fks::mild
