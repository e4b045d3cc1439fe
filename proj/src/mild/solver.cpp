#include "fks/mild/solver.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fks/error.hpp"
#include "fks/mild/nonlinear.hpp"
#include "fks/specfun/fractional_calculus.hpp"
#include "fks/specfun/gamma.hpp"
#include "fks/spectral/fft.hpp"
#include "fks/spectral/operators.hpp"

namespace fks::mild {

using spectral::cplx;

double default_trajectory_norm(const Trajectory& traj) {
  double m = 0.0;
  for (const auto& s : traj) m = std::max(m, spectral::l2_norm(s.u) + spectral::l2_norm(s.v) + spectral::l2_norm(s.w));
  return m;
}

Trajectory difference(const Trajectory& a, const Trajectory& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::size_mismatch, "difference: trajectories differ in length");
  Trajectory out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    out[i].t_index = a[i].t_index;
    out[i].u = a[i].u - b[i].u;
    out[i].v = a[i].v - b[i].v;
    out[i].w = a[i].w - b[i].w;
  }
  return out;
}

namespace {

bool finite(const Field& f, double bound) {
  for (double x : f.values)
    if (!std::isfinite(x) || std::abs(x) > bound) return false;
  return true;
}

bool finite(const SolverState& s, double bound = 1e150) { return finite(s.u, bound) && finite(s.v, bound) && finite(s.w, bound); }

void check_init(const SolverState& init, const SolverConfig& cfg) {
  cfg.validate();
  init.validate();
  if (init.u.grid != cfg.grid) throw Error(ErrorKind::size_mismatch, "solver: initial data not on the config grid");
}

NonlinearSpectra zero_terms(const GridSpec& g) {
  return {SpectralCoeffs(g, g.d), SpectralCoeffs(g, 1), SpectralCoeffs(g, 1)};
}

NonlinearSpectra terms(const SolverState& s, const SolverConfig& cfg, const Field& phi) {
  if (!cfg.nonlinear) return zero_terms(cfg.grid);
  return nonlinear_terms(s, phi, cfg.params, cfg.w_reaction, cfg.dealias);
}

}  // namespace

Trajectory linear_trajectory(const SolverState& init, const SolverConfig& cfg) {
  check_init(init, cfg);
  const Propagator prop(cfg);
  const Spectra s0 = to_spectra(init);
  Trajectory out;
  for (int n = 0; n <= cfg.n_steps; ++n) out.push_back(to_state(prop.linear(s0, n), n));
  return out;
}

SolveResult picard_solve(const SolverState& init, const SolverConfig& cfg, const PicardOptions& opts) {
  check_init(init, cfg);
  const TrajectoryNorm norm = opts.norm ? opts.norm : TrajectoryNorm(default_trajectory_norm);
  const Propagator prop(cfg);
  const Field phi = cfg.potential();
  const Spectra s0 = to_spectra(init);

  SolveResult res;
  for (int n = 0; n <= cfg.n_steps; ++n) res.trajectory.push_back(to_state(prop.linear(s0, n), n));

  double prev_delta = std::numeric_limits<double>::quiet_NaN();
  for (int k = 1; k <= cfg.picard_max; ++k) {
    Trajectory next;
    next.reserve(res.trajectory.size());
    try {
      NonlinearHistory hist;
      for (int j = 0; j < cfg.n_steps; ++j) hist.push(terms(res.trajectory[j], cfg, phi));
      for (int n = 0; n <= cfg.n_steps; ++n) {
        next.push_back(to_state(prop.step(s0, hist, n), n));
        if (!finite(next.back())) throw Error(ErrorKind::numerical, "iterate left the finite range");
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::numerical) throw;
      res.converged = false;
      res.message = "diverged at iteration " + std::to_string(k) + ": " + e.what();
      return res;
    }
    const double top = norm(next);
    const double diff = norm(difference(next, res.trajectory));
    const double delta = (top == 0.0) ? (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()) : diff / top;
    PicardIterate it;
    it.iter = k;
    it.delta = delta;
    it.ratio = (k == 1) ? std::numeric_limits<double>::quiet_NaN() : delta / prev_delta;
    res.iterations.push_back(it);
    res.trajectory = std::move(next);
    prev_delta = delta;
    if (!std::isfinite(delta) || delta > opts.divergence_bound) {
      res.converged = false;
      std::ostringstream os;
      os << "diverged at iteration " << k << " (delta " << delta << ")";
      res.message = os.str();
      return res;
    }
    if (delta < cfg.picard_tol) {
      res.converged = true;
      res.message = "converged after " + std::to_string(k) + " iterations";
      return res;
    }
  }
  res.converged = false;
  res.message = "picard_max = " + std::to_string(cfg.picard_max) + " reached";
  return res;
}

Trajectory march(const SolverState& init, const SolverConfig& cfg) {
  check_init(init, cfg);
  const Propagator prop(cfg);
  const Field phi = cfg.potential();
  const Spectra s0 = to_spectra(init);
  Trajectory out;
  NonlinearHistory hist;
  for (int n = 0; n <= cfg.n_steps; ++n) {
    out.push_back(to_state(prop.step(s0, hist, n), n));
    if (!finite(out.back())) {
      std::ostringstream os;
      os << "march: fields left the finite range at node " << n;
      throw Error(ErrorKind::numerical, os.str());
    }
    if (n < cfg.n_steps) hist.push(terms(out.back(), cfg, phi));
  }
  return out;
}

NodeDiagnostics diagnose(const SolverState& s, const SolverConfig& cfg) {
  NodeDiagnostics d;
  d.t_index = s.t_index;
  d.t = cfg.time(s.t_index);
  const Field div = spectral::divergence(s.u);
  for (double x : div.values) d.div_u = std::max(d.div_u, std::abs(x));
  d.norm_u = spectral::l2_norm(s.u);
  d.norm_v = spectral::l2_norm(s.v);
  d.norm_w = spectral::l2_norm(s.w);
  d.min_v = std::numeric_limits<double>::infinity();
  for (double x : s.v.values) d.min_v = std::min(d.min_v, x);
  return d;
}

double CaputoResidual::max() const { return std::max({max_u, max_v, max_w}); }

namespace {

// L² norm from coefficients: ‖f‖² = L^d Σ |F_k|²
double coeff_l2(const std::vector<cplx>& c, const GridSpec& g) {
  double acc = 0.0;
  for (const cplx& z : c) acc += std::norm(z);
  return std::sqrt(std::pow(g.box_length, g.d) * acc);
}

}  // namespace

CaputoResidual caputo_residual(const Trajectory& traj, const SolverConfig& cfg, int first_node) {
  cfg.validate();
  const int N = cfg.n_steps;
  if (static_cast<int>(traj.size()) != N + 1)
    throw Error(ErrorKind::size_mismatch, "caputo_residual: trajectory length differs from n_steps + 1");
  if (first_node < 0) first_node = std::max(1, N / 4);
  if (first_node < 1 || first_node > N) throw Error(ErrorKind::out_of_range, "caputo_residual: first_node off the mesh");

  const double a = cfg.params.alpha;
  const auto b = specfun::l1_weights(static_cast<std::size_t>(N), a);
  const double scale = std::pow(cfg.dt(), -a) * specfun::rgamma(2.0 - a);
  const Field phi = cfg.potential();

  std::vector<Spectra> Y;
  Y.reserve(traj.size());
  for (const auto& s : traj) Y.push_back(to_spectra(s));

  CaputoResidual out;
  out.first_node = first_node;
  for (int n = first_node; n <= N; ++n) {
    const NonlinearSpectra Nn = terms(traj[n], cfg, phi);
    auto one = [&](SpectralCoeffs Spectra::*f, const SpectralCoeffs& nl) {
      const SpectralCoeffs& yn = Y[n].*f;
      std::vector<cplx> dta(yn.coeffs.size(), cplx(0.0, 0.0));
      for (int k = 0; k < n; ++k) {
        const auto& hi = (Y[n - k].*f).coeffs;
        const auto& lo = (Y[n - k - 1].*f).coeffs;
        for (std::size_t i = 0; i < dta.size(); ++i) dta[i] += b[k] * (hi[i] - lo[i]);
      }
      const SpectralCoeffs Ay = spectral::frac_laplacian(yn, cfg.params.beta);
      std::vector<cplx> r(dta.size());
      for (std::size_t i = 0; i < r.size(); ++i) r[i] = scale * dta[i] + Ay.coeffs[i] + nl.coeffs[i];
      const double denom = coeff_l2(Ay.coeffs, cfg.grid) + coeff_l2(nl.coeffs, cfg.grid);
      const double num = coeff_l2(r, cfg.grid);
      return denom > 0.0 ? num / denom : num;
    };
    out.u.push_back(one(&Spectra::u, Nn.u));
    out.v.push_back(one(&Spectra::v, Nn.v));
    out.w.push_back(one(&Spectra::w, Nn.w));
  }
  for (double x : out.u) out.max_u = std::max(out.max_u, x);
  for (double x : out.v) out.max_v = std::max(out.max_v, x);
  for (double x : out.w) out.max_w = std::max(out.max_w, x);
  return out;
}

std::string diagnostics_csv(const SolveResult& result, const SolverConfig& cfg) {
  std::ostringstream os;
  os << "iter,t_index,t,picard_ratio,div_u,norm_u,norm_v,norm_w,residual_u,residual_v,residual_w\n";
  const int iter = static_cast<int>(result.iterations.size());
  const double ratio = result.iterations.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                 : result.iterations.back().ratio;
  CaputoResidual res;
  bool have_res = false;
  if (cfg.n_steps >= 1 && static_cast<int>(result.trajectory.size()) == cfg.n_steps + 1) {
    res = caputo_residual(result.trajectory, cfg);
    have_res = true;
  }
  char buf[512];
  for (const auto& s : result.trajectory) {
    const NodeDiagnostics d = diagnose(s, cfg);
    std::snprintf(buf, sizeof buf, "%d,%d,%.10g,%.6g,%.6g,%.10g,%.10g,%.10g", iter, d.t_index, d.t, ratio, d.div_u,
                  d.norm_u, d.norm_v, d.norm_w);
    os << buf;
    const int i = d.t_index - res.first_node;
    if (have_res && i >= 0 && i < static_cast<int>(res.u.size())) {
      std::snprintf(buf, sizeof buf, ",%.6g,%.6g,%.6g", res.u[i], res.v[i], res.w[i]);
      os << buf << '\n';
    } else {
      os << ",,,\n";
    }
  }
  return os.str();
}

}  // namespace fks::mild
