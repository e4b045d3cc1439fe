#include "fks/mild/state.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"
#include "fks/spectral/fft.hpp"

namespace fks::mild {

void SolverConfig::validate() const {
  params.validate();
  grid.validate();
  if (!(T > 0.0) || !std::isfinite(T)) throw Error(ErrorKind::domain, "SolverConfig: T must be positive");
  if (n_steps < 1) throw Error(ErrorKind::domain, "SolverConfig: n_steps must be >= 1");
  if (picard_max < 1) throw Error(ErrorKind::domain, "SolverConfig: picard_max must be >= 1");
  if (!(picard_tol > 0.0)) throw Error(ErrorKind::domain, "SolverConfig: picard_tol must be > 0");
  if (!phi.values.empty()) {
    phi.validate();
    if (phi.grid != grid || phi.components != 1)
      throw Error(ErrorKind::size_mismatch, "SolverConfig: phi must be a scalar field on the solver grid");
  }
}

Field SolverConfig::potential() const { return phi.values.empty() ? Field::scalar(grid) : phi; }

SolverState SolverState::zero(const GridSpec& g) {
  SolverState s;
  s.u = Field::vector(g);
  s.v = Field::scalar(g);
  s.w = Field::scalar(g);
  return s;
}

void SolverState::validate() const {
  u.validate();
  v.validate();
  w.validate();
  if (u.components != u.grid.d || v.components != 1 || w.components != 1)
    throw Error(ErrorKind::size_mismatch, "SolverState: u must be a vector, v and w scalars");
  if (v.grid != u.grid || w.grid != u.grid) throw Error(ErrorKind::size_mismatch, "SolverState: grids differ");
}

Spectra to_spectra(const SolverState& s) {
  return {spectral::transform(s.u), spectral::transform(s.v), spectral::transform(s.w)};
}

SolverState to_state(const Spectra& s, int t_index) {
  SolverState out;
  out.t_index = t_index;
  out.u = spectral::inverse_transform(s.u);
  out.v = spectral::inverse_transform(s.v);
  out.w = spectral::inverse_transform(s.w);
  return out;
}

}  // namespace fks::mild
