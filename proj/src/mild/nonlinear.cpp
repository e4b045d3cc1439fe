#include "fks/mild/nonlinear.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"
#include "fks/spectral/fft.hpp"
#include "fks/spectral/operators.hpp"

namespace fks::mild {

using spectral::cplx;

namespace {

SpectralCoeffs product(const Field& a, const Field& b, bool dealias) {
  if (dealias) return spectral::dealiased_product(a, b);
  const int comps = std::max(a.components, b.components);
  Field prod(a.grid, comps);
  for (int c = 0; c < comps; ++c) {
    const double* pa = a.component(a.components == 1 ? 0 : c);
    const double* pb = b.component(b.components == 1 ? 0 : c);
    double* out = prod.component(c);
    for (std::size_t i = 0; i < a.points(); ++i) out[i] = pa[i] * pb[i];
  }
  return spectral::transform(prod);
}

Field component(const Field& f, int c) {
  Field out = Field::scalar(f.grid);
  std::copy(f.component(c), f.component(c) + f.points(), out.values.begin());
  return out;
}

// (U·∇) f in spectral form
SpectralCoeffs advect(const Field& U, const Field& f, bool dealias) {
  const GridSpec& g = U.grid;
  const SpectralCoeffs F = spectral::transform(f);
  SpectralCoeffs acc(g, f.components);
  for (int j = 0; j < g.d; ++j) {
    const Field dj = spectral::inverse_transform(spectral::derivative(F, j));
    const SpectralCoeffs t = product(component(U, j), dj, dealias);
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += t.coeffs[i];
  }
  return acc;
}

// ∇·(U ⊗ U)
SpectralCoeffs conservative(const Field& U, bool dealias) {
  const GridSpec& g = U.grid;
  SpectralCoeffs acc(g, g.d);
  for (int j = 0; j < g.d; ++j) {
    const SpectralCoeffs t = spectral::derivative(product(component(U, j), U, dealias), j);
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += t.coeffs[i];
  }
  return acc;
}

void check_finite(const SpectralCoeffs& F, const char* name) {
  for (const cplx& z : F.coeffs) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      std::ostringstream os;
      os << "nonlinear_terms: non-finite value in " << name;
      throw Error(ErrorKind::numerical, os.str());
    }
  }
}

void check_finite(const Field& f, const char* name) {
  for (double x : f.values) {
    if (!std::isfinite(x)) {
      std::ostringstream os;
      os << "nonlinear_terms: non-finite input " << name;
      throw Error(ErrorKind::numerical, os.str());
    }
  }
}

}  // namespace

NonlinearSpectra nonlinear_terms(const SolverState& s, const Field& phi, const FracParams& p, WReaction reaction,
                                 bool dealias) {
  s.validate();
  p.validate();
  const GridSpec& g = s.u.grid;
  if (phi.grid != g || phi.components != 1)
    throw Error(ErrorKind::size_mismatch, "nonlinear_terms: phi must be a scalar on the state grid");
  check_finite(s.u, "u");
  check_finite(s.v, "v");
  check_finite(s.w, "w");

  NonlinearSpectra out;
  // u: ℙ(∇·(u⊗u) + v∇φ)
  SpectralCoeffs Nu = conservative(s.u, dealias);
  const SpectralCoeffs force = product(s.v, spectral::gradient(phi), dealias);
  for (std::size_t i = 0; i < Nu.coeffs.size(); ++i) Nu.coeffs[i] += force.coeffs[i];
  out.u = spectral::leray_project(Nu);
  // A uniform force on the torus is a gradient (of a linear pressure), so the
  // projection removes it too; the mean velocity stays at its initial value.
  for (int c = 0; c < g.d; ++c) out.u.component(c)[0] = 0.0;

  const SpectralCoeffs W = spectral::transform(s.w);
  // v: u·∇v + ∇·(v∇B(w))
  SpectralCoeffs Nv = advect(s.u, s.v, dealias);
  const Field gradB = spectral::inverse_transform(spectral::gradient(spectral::frac_laplacian(W, p.beta - 2.0)));
  const SpectralCoeffs flux = spectral::divergence(product(s.v, gradB, dealias));
  for (std::size_t i = 0; i < Nv.coeffs.size(); ++i) Nv.coeffs[i] += flux.coeffs[i];
  out.v = std::move(Nv);

  // w: u·∇w ± ((-Δ)^{(2-β)/2} w) v
  SpectralCoeffs Nw = advect(s.u, s.w, dealias);
  // order 0 at β = 2 is the identity, mean included
  const auto zm = p.beta == 2.0 ? spectral::ZeroModePolicy::identity : spectral::ZeroModePolicy::zero;
  const Field Dw = spectral::inverse_transform(spectral::frac_laplacian(W, 2.0 - p.beta, zm));
  const SpectralCoeffs react = product(Dw, s.v, dealias);
  const double sgn = reaction == WReaction::consumption ? 1.0 : -1.0;
  for (std::size_t i = 0; i < Nw.coeffs.size(); ++i) Nw.coeffs[i] += sgn * react.coeffs[i];
  out.w = std::move(Nw);

  check_finite(out.u, "N_u");
  check_finite(out.v, "N_v");
  check_finite(out.w, "N_w");
  return out;
}

}  // namespace fks::mild
