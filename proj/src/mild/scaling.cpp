#include "fks/mild/scaling.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"

namespace fks::mild {

namespace {

// Same index, box shrunk by λ: samples of f(λ·) on the new grid are the old
// samples.
Field regrid(const Field& f, const GridSpec& g, double factor) {
  Field out(g, f.components);
  for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = factor * f.values[i];
  return out;
}

double rel_linf(const Field& b, const Field& a_scaled) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    num = std::max(num, std::abs(b.values[i] - a_scaled.values[i]));
    den = std::max(den, std::abs(a_scaled.values[i]));
  }
  return den > 0.0 ? num / den : num;
}

}  // namespace

ScaledProblem scaled_problem(const SolverConfig& cfg, const SolverState& init, double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error(ErrorKind::domain, "scaled_problem: lambda must be > 0");
  cfg.validate();
  init.validate();
  const double b = cfg.params.beta;
  ScaledProblem out;
  out.config = cfg;
  out.config.grid.box_length = cfg.grid.box_length / lambda;
  out.config.T = cfg.T / std::pow(lambda, b / cfg.params.alpha);
  if (!cfg.phi.values.empty()) out.config.phi = regrid(cfg.phi, out.config.grid, 1.0);
  out.init.t_index = 0;
  out.init.u = regrid(init.u, out.config.grid, std::pow(lambda, b - 1.0));
  out.init.v = regrid(init.v, out.config.grid, std::pow(lambda, 2.0 * (b - 1.0)));
  out.init.w = regrid(init.w, out.config.grid, 1.0);
  return out;
}

double scaling_discrepancy(const Trajectory& a, const SolverConfig& cfg_a, const Trajectory& b,
                           const SolverConfig& cfg_b, double lambda) {
  std::ostringstream os;
  const double bt = cfg_a.params.beta;
  const double expect_L = cfg_a.grid.box_length / lambda;
  const double expect_T = cfg_a.T / std::pow(lambda, bt / cfg_a.params.alpha);
  if (cfg_a.grid.d != cfg_b.grid.d || cfg_a.grid.n != cfg_b.grid.n ||
      std::abs(cfg_b.grid.box_length - expect_L) > 1e-12 * expect_L) {
    os << "scaling: grid (d=" << cfg_b.grid.d << ", n=" << cfg_b.grid.n << ", L=" << cfg_b.grid.box_length
       << ") is not the base grid shrunk by " << lambda;
    throw Error(ErrorKind::mismatched_config, os.str());
  }
  if (cfg_a.n_steps != cfg_b.n_steps || std::abs(cfg_b.T - expect_T) > 1e-12 * expect_T ||
      cfg_a.params.alpha != cfg_b.params.alpha || cfg_a.params.beta != cfg_b.params.beta) {
    os << "scaling: time mesh (T=" << cfg_b.T << ", steps=" << cfg_b.n_steps << ") does not match T/lambda^(beta/alpha) = "
       << expect_T;
    throw Error(ErrorKind::mismatched_config, os.str());
  }
  if (a.size() != b.size()) throw Error(ErrorKind::mismatched_config, "scaling: trajectories differ in length");
  double worst = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) {
    worst = std::max(worst, rel_linf(b[n].u, regrid(a[n].u, cfg_b.grid, std::pow(lambda, bt - 1.0))));
    worst = std::max(worst, rel_linf(b[n].v, regrid(a[n].v, cfg_b.grid, std::pow(lambda, 2.0 * (bt - 1.0)))));
    worst = std::max(worst, rel_linf(b[n].w, regrid(a[n].w, cfg_b.grid, 1.0)));
  }
  return worst;
}

std::vector<ScalingReport> scaling_family_check(const SolverConfig& cfg, const SolverState& init,
                                                const std::vector<double>& lambdas) {
  const SolveResult base = picard_solve(init, cfg);
  std::vector<ScalingReport> out;
  for (double lam : lambdas) {
    const ScaledProblem sp = scaled_problem(cfg, init, lam);
    const SolveResult other = picard_solve(sp.init, sp.config);
    ScalingReport r;
    r.lambda = lam;
    r.converged = base.converged && other.converged;
    r.discrepancy = scaling_discrepancy(base.trajectory, cfg, other.trajectory, sp.config, lam);
    out.push_back(r);
  }
  return out;
}

}  // namespace fks::mild
