#include "fks/verify/contraction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fks/error.hpp"

namespace fks::verify {

ContractionReport contraction_probe(const mild::SolverConfig& cfg, const mild::SolverState& base,
                                    const AdmissibleExponents& e, const std::vector<double>& kappas,
                                    const NormOptions& o, const mild::PicardOptions& po) {
  if (!e.valid) throw Error(ErrorKind::constraint_violation, "contraction_probe: exponent tuple " + describe(e));
  const double nan = std::numeric_limits<double>::quiet_NaN();
  ContractionReport rep;
  rep.threshold = nan;
  for (double kappa : kappas) {
    mild::SolverState s = base;
    Field phi = cfg.potential();
    ContractionRow row;
    row.kappa = kappa;
    row.scale = scale_to_kappa(s, phi, kappa, e, o);
    mild::SolverConfig c = cfg;
    c.phi = phi;
    const mild::SolveResult r = mild::picard_solve(s, c, po);
    row.iterations = r.iterations;
    row.converged = r.converged;
    row.message = r.message;
    row.max_ratio = nan;
    for (std::size_t k = 1; k < r.iterations.size(); ++k) {
      const double q = r.iterations[k].ratio;
      if (std::isnan(q)) continue;  // 0/0 after exact convergence
      row.max_ratio = row.ratio_defined ? std::max(row.max_ratio, q) : q;
      row.ratio_defined = true;
    }
    rep.rows.push_back(row);
  }
  std::vector<std::size_t> order(rep.rows.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return rep.rows[a].kappa < rep.rows[b].kappa; });
  double last = -1.0;
  bool found_smallest = false;
  for (std::size_t i : order) {
    const auto& row = rep.rows[i];
    const bool fails = !row.converged || (row.ratio_defined && row.max_ratio >= 1.0);
    if (fails && std::isnan(rep.threshold)) rep.threshold = row.kappa;
    if (row.ratio_defined) {
      if (row.max_ratio < last) rep.monotone = false;
      last = row.max_ratio;
    }
    if (!found_smallest && row.kappa > 0.0) {
      found_smallest = true;
      rep.smallest_contracts = row.converged && (!row.ratio_defined || row.max_ratio < 0.5);
    }
  }
  return rep;
}

std::string ContractionReport::csv() const {
  std::ostringstream os;
  os << "kappa,iter,ratio\n";
  char buf[128];
  for (const auto& row : rows) {
    for (const auto& it : row.iterations) {
      std::snprintf(buf, sizeof buf, "%.6g,%d,%.10g\n", row.kappa, it.iter, it.ratio);
      os << buf;
    }
  }
  return os.str();
}

}  // namespace fks::verify
