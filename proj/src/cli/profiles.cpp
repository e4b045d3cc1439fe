#include "fks/cli/profiles.hpp"

#include <cmath>
#include <numbers>

#include "fks/error.hpp"
#include "fks/spaces/probes.hpp"
#include "fks/spectral/fft.hpp"
#include "fks/spectral/operators.hpp"
#include "fks/spectral/snapshot.hpp"
#include "fks/verify/norms.hpp"

namespace fks::cli {

using spectral::Field;
using spectral::GridSpec;

namespace {

Field scalar_profile(const ProfileSpec& p, const GridSpec& g, std::uint64_t run_seed) {
  Field f = Field::scalar(g);
  const double L = g.box_length;
  if (p.profile == "zero") return f;
  if (p.profile == "random_band_limited") {
    f = spaces::random_band_limited(g, p.kmax, p.seed.value_or(run_seed), 1);
  } else if (p.profile == "gaussian") {
    for (std::size_t i = 0; i < f.points(); ++i) {
      double r2 = 0.0;
      for (int a = 0; a < g.d; ++a) {
        const double c = p.center.empty() ? 0.5 * L : p.center[a];
        double dx = std::remainder(f.coord(i, a) - c, L);  // min-image
        r2 += dx * dx;
      }
      f.values[i] = std::exp(-r2 / (2 * p.width * p.width));
    }
  } else if (p.profile == "single_mode") {
    for (std::size_t i = 0; i < f.points(); ++i) {
      double ph = 0.0;
      for (int a = 0; a < g.d; ++a) {
        const int k = p.k.empty() ? (a == 0 ? 1 : 0) : p.k[a];
        ph += k * f.coord(i, a);
      }
      f.values[i] = std::cos(2 * std::numbers::pi / L * ph);
    }
  } else if (p.profile == "snapshot") {
    f = spectral::read_snapshot(p.path);
    if (f.grid != g || f.components != 1) throw Error(ErrorKind::config, "snapshot '" + p.path + "' does not fit");
    return f;
  } else {
    throw Error(ErrorKind::config, "profile '" + p.profile + "' is not a scalar profile");
  }
  for (double& x : f.values) x = p.amplitude * x + p.offset;
  return f;
}

}  // namespace

Field make_profile(const ProfileSpec& p, const GridSpec& g, int components, std::uint64_t run_seed) {
  g.validate();
  if (components == 1) return scalar_profile(p, g, run_seed);
  if (components != g.d) throw Error(ErrorKind::config, "make_profile: components must be 1 or d");
  if (p.profile == "zero") return Field::vector(g);
  if (p.profile == "snapshot") {
    Field f = spectral::read_snapshot(p.path);
    if (f.grid != g || f.components != g.d) throw Error(ErrorKind::config, "snapshot '" + p.path + "' does not fit");
    return f;
  }
  if (p.profile == "vortex") {
    // u = (∂2ψ, -∂1ψ, 0), ψ Gaussian: exactly divergence-free on the grid
    ProfileSpec s = p;
    s.profile = "gaussian";
    s.offset = 0.0;
    const auto psi = spectral::transform(scalar_profile(s, g, run_seed));
    const Field d1 = spectral::inverse_transform(spectral::derivative(psi, 1));
    const Field d0 = spectral::inverse_transform(spectral::derivative(psi, 0));
    Field u = Field::vector(g);
    for (std::size_t i = 0; i < u.points(); ++i) {
      u.component(0)[i] = d1.values[i];
      u.component(1)[i] = -d0.values[i];
    }
    return u;
  }
  Field u(g, g.d);
  if (p.profile == "random_band_limited") {
    u = spaces::random_band_limited(g, p.kmax, p.seed.value_or(run_seed), g.d);
    for (double& x : u.values) x *= p.amplitude;
  } else {
    ProfileSpec s = p;
    s.offset = 0.0;
    const Field base = scalar_profile(s, g, run_seed);
    for (int a = 0; a < g.d; ++a) {
      const double dir = p.direction.empty() ? (a == g.d - 1 ? 1.0 : 0.0) : p.direction[a];
      for (std::size_t i = 0; i < u.points(); ++i) u.component(a)[i] = dir * base.values[i];
    }
  }
  u = spectral::leray_project(u);
  for (int a = 0; a < g.d; ++a) {
    const double m = spectral::mean(u, a);
    for (std::size_t i = 0; i < u.points(); ++i) u.component(a)[i] -= m;  // drop the mean flow
  }
  return u;
}

mild::SolverConfig solver_config(const RunConfig& c) {
  mild::SolverConfig s;
  s.params = spectral::FracParams(c.alpha, c.beta);
  s.grid = GridSpec{c.d, c.n, c.box_length};
  s.T = c.T;
  s.n_steps = c.n_steps;
  s.picard_max = c.picard_max;
  s.picard_tol = c.picard_tol;
  s.dealias = c.dealias;
  s.w_reaction = c.w_reaction == "production" ? mild::WReaction::production : mild::WReaction::consumption;
  return s;
}

Problem build_problem(const RunConfig& c, bool require_admissible) {
  Problem pr;
  try {
    pr.exponents = verify::admissible_params(c.d, c.lambda, c.beta, c.alpha, c.r, c.q);
  } catch (const Error& e) {
    if (require_admissible) throw Error(ErrorKind::config, std::string("exponents: ") + e.what());
    pr.exponents.valid = false;
  }
  if (require_admissible && !pr.exponents.valid)
    throw Error(ErrorKind::config, "exponents not admissible: " + verify::describe(pr.exponents));
  pr.solver = solver_config(c);
  const GridSpec& g = pr.solver.grid;
  pr.init.u = make_profile(c.u, g, g.d, c.seed);
  pr.init.v = make_profile(c.v, g, 1, c.seed + 1);
  pr.init.w = make_profile(c.w, g, 1, c.seed + 2);
  pr.solver.phi = make_profile(c.phi, g, 1, c.seed + 3);
  if (c.kappa) {
    if (!pr.exponents.valid) throw Error(ErrorKind::config, "initial.kappa needs an admissible exponent tuple");
    pr.kappa_scale = verify::scale_to_kappa(pr.init, pr.solver.phi, *c.kappa, pr.exponents);
  }
  return pr;
}

}  // namespace fks::cli
