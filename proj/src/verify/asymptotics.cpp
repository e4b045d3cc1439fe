#include "fks/verify/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "fks/error.hpp"

namespace fks::verify {

int transient_index(const std::vector<double>& xs) {
  int idx = static_cast<int>(xs.size()) - 1;
  while (idx > 0 && xs[idx] <= xs[idx - 1] * (1.0 + 1e-9) + 1e-300) --idx;
  return std::max(idx, 0);
}

AsymptoticsReport asymptotics_experiment(const mild::SolverConfig& cfg, const AdmissibleExponents& e,
                                         const mild::SolverState& a, const mild::SolverState& b,
                                         const AsymptoticsOptions& opts) {
  if (!e.valid) throw Error(ErrorKind::constraint_violation, "asymptotics: exponent tuple " + describe(e));
  const Field phi = cfg.potential();
  for (const auto* s : {&a, &b}) {
    const double k = data_norm(*s, phi, e, opts.norms).total();
    if (!(k <= opts.kappa_gate)) {
      std::ostringstream os;
      os << "asymptotics: data norm " << k << " exceeds the smallness gate " << opts.kappa_gate;
      throw Error(ErrorKind::gate_failure, os.str());
    }
  }
  const mild::SolveResult ra = mild::picard_solve(a, cfg);
  const mild::SolveResult rb = mild::picard_solve(b, cfg);
  if (!ra.converged || !rb.converged)
    throw Error(ErrorKind::numerical, "asymptotics: solve did not converge (" + (ra.converged ? rb : ra).message + ")");

  mild::SolverState d0;
  d0.u = a.u - b.u;
  d0.v = a.v - b.v;
  d0.w = a.w - b.w;
  const mild::Trajectory lin = mild::linear_trajectory(d0, cfg);
  const mild::Trajectory diff = mild::difference(ra.trajectory, rb.trajectory);

  AsymptoticsReport rep;
  for (int n = 1; n <= cfg.n_steps; ++n) {
    const double t = cfg.time(n);
    rep.t.push_back(t);
    rep.f.push_back(weighted_terms(lin[n], t, e, opts.norms));
    rep.g.push_back(weighted_terms(diff[n], t, e, opts.norms));
    rep.f_total.push_back(rep.f.back().total());
    rep.g_total.push_back(rep.g.back().total());
  }
  const int N = static_cast<int>(rep.t.size());
  rep.f_transient = transient_index(rep.f_total);
  rep.g_transient = transient_index(rep.g_total);
  rep.f_monotone = rep.f_transient <= N / 2;
  rep.g_monotone = rep.g_transient <= N / 2;
  const int W = opts.final_window > 0 ? std::min(opts.final_window, N) : std::max(2, cfg.n_steps / 8);
  auto final_ratio = [&](const std::vector<double>& xs) {
    const double top = *std::max_element(xs.end() - W, xs.end());
    return xs.front() > 0.0 ? top / xs.front() : (top == 0.0 ? 0.0 : INFINITY);
  };
  rep.f_final_ratio = final_ratio(rep.f_total);
  rep.g_final_ratio = final_ratio(rep.g_total);
  if (rep.f_final_ratio < opts.tol_f) rep.forward_holds = rep.g_final_ratio < opts.tol_g;
  if (rep.g_final_ratio < opts.tol_g) rep.reverse_holds = rep.f_final_ratio < opts.tol_f * opts.reverse_constant;
  rep.recorded_constant = rep.g_final_ratio > 0.0 ? rep.f_final_ratio / rep.g_final_ratio : 0.0;
  for (int i = 0; i < N; ++i) {
    if (rep.f_total[i] > 0.0) rep.max_g_over_f = std::max(rep.max_g_over_f, rep.g_total[i] / rep.f_total[i]);
    if (rep.g_total[i] > 0.0) rep.max_f_over_g = std::max(rep.max_f_over_g, rep.f_total[i] / rep.g_total[i]);
  }
  return rep;
}

std::string AsymptoticsReport::csv() const {
  std::ostringstream os;
  os << "t,f_total,g_total,f_1,f_2,f_3,f_4,f_5,g_1,g_2,g_3,g_4,g_5\n";
  char buf[64];
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g", t[i]);
    os << buf;
    for (double x : {f_total[i], g_total[i]}) {
      std::snprintf(buf, sizeof buf, ",%.10g", x);
      os << buf;
    }
    for (const auto* ft : {&f[i], &g[i]})
      for (double x : ft->terms) {
        std::snprintf(buf, sizeof buf, ",%.10g", x);
        os << buf;
      }
    os << '\n';
  }
  return os.str();
}

}  // namespace fks::verify
