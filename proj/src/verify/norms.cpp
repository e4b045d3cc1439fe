#include "fks/verify/norms.hpp"

#include <cmath>
#include <limits>

#include "fks/error.hpp"
#include "fks/spaces/besov.hpp"
#include "fks/spaces/littlewood_paley.hpp"
#include "fks/spectral/operators.hpp"

namespace fks::verify {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

void require_valid(const AdmissibleExponents& e) {
  if (!e.valid) throw Error(ErrorKind::constraint_violation, "norms: exponent tuple " + describe(e));
}

double besov(const Field& f, double s, double p, const AdmissibleExponents& e, const spaces::LPBank& bank,
             const NormOptions& o) {
  spaces::BesovParams bp;
  bp.s = s;
  bp.p = p;
  bp.lambda = e.lambda;
  bp.r = inf;
  return spaces::besov_morrey_norm(f, bp, bank, o.morrey);
}

double morrey(const Field& f, double p, const AdmissibleExponents& e, const NormOptions& o) {
  return spaces::morrey_norm(f, spaces::MorreyParams{p, e.lambda}, o.morrey);
}

double w_sobolev(const Field& w, const AdmissibleExponents& e, const NormOptions& o) {
  const double order = 2.0 - e.beta;
  return spaces::sobolev_morrey_norm(w, order, spaces::MorreyParams{(e.d - e.lambda) / order, e.lambda}, o.morrey);
}

struct Parts {
  double bu, bv, bw;     // Besov parts
  double mu, mv, mw;     // unweighted Morrey parts
  double sw;             // Sobolev-Morrey part of w
};

Parts parts(const SolverState& s, const AdmissibleExponents& e, const NormOptions& o) {
  require_valid(e);
  s.validate();
  if (s.u.grid.d != e.d) throw Error(ErrorKind::size_mismatch, "norms: state dimension differs from exponent tuple");
  const spaces::LPBank bank = spaces::lp_bank(s.u.grid, o.max_xi);
  const Field gw = spectral::gradient(s.w);
  Parts p;
  p.bu = besov(s.u, -e.betas[0], e.r[0], e, bank, o);
  p.bv = besov(s.v, -e.betas[1], e.r[1], e, bank, o);
  p.bw = besov(gw, -e.betas[2], e.r[2], e, bank, o);
  p.mu = morrey(s.u, e.q[0], e, o);
  p.mv = morrey(s.v, e.q[1], e, o);
  p.mw = morrey(gw, e.q[2], e, o);
  p.sw = w_sobolev(s.w, e, o);
  return p;
}

}  // namespace

FiveTerms data_norm(const SolverState& s, const Field& phi, const AdmissibleExponents& e, const NormOptions& o) {
  require_valid(e);
  s.validate();
  const spaces::LPBank bank = spaces::lp_bank(s.u.grid, o.max_xi);
  FiveTerms out;
  out.terms[0] = besov(s.u, -e.betas[0], e.r[0], e, bank, o);
  out.terms[1] = besov(s.v, -e.betas[1], e.r[1], e, bank, o);
  out.terms[2] = besov(spectral::gradient(s.w), -e.betas[2], e.r[2], e, bank, o);
  out.terms[3] = w_sobolev(s.w, e, o);
  out.terms[4] = phi.values.empty() ? 0.0 : morrey(spectral::gradient(phi), e.d - e.lambda, e, o);
  return out;
}

FiveTerms weighted_terms(const SolverState& s, double t, const AdmissibleExponents& e, const NormOptions& o) {
  if (!(t >= 0.0)) throw Error(ErrorKind::domain, "weighted_terms: t must be >= 0");
  const Parts p = parts(s, e, o);
  FiveTerms out;
  out.terms[0] = std::pow(t, e.chis[0] / 2) * p.mu;
  out.terms[1] = std::pow(t, e.chis[1] / 2) * p.mv;
  out.terms[2] = std::pow(t, e.chis[2] / 2) * p.mw;
  out.terms[3] = p.sw;
  out.terms[4] = p.bu + p.bv + p.bw;
  return out;
}

double trajectory_space_norm(const mild::Trajectory& traj, const mild::SolverConfig& cfg, const AdmissibleExponents& e,
                             const NormOptions& o) {
  double bu = 0, bv = 0, bw = 0, mu = 0, mv = 0, mw = 0, sw = 0;
  for (const auto& s : traj) {
    const double t = cfg.time(s.t_index);
    const Parts p = parts(s, e, o);
    bu = std::max(bu, p.bu);
    bv = std::max(bv, p.bv);
    bw = std::max(bw, p.bw);
    mu = std::max(mu, std::pow(t, e.chis[0] / 2) * p.mu);
    mv = std::max(mv, std::pow(t, e.chis[1] / 2) * p.mv);
    mw = std::max(mw, std::pow(t, e.chis[2] / 2) * p.mw);
    sw = std::max(sw, p.sw);
  }
  return bu + mu + bv + mv + bw + mw + sw;
}

double scale_to_kappa(SolverState& s, Field& phi, double kappa, const AdmissibleExponents& e, const NormOptions& o) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw Error(ErrorKind::domain, "scale_to_kappa: kappa must be >= 0");
  const double now = data_norm(s, phi, e, o).total();
  if (now == 0.0) return 1.0;
  const double f = kappa / now;
  for (auto* fld : {&s.u, &s.v, &s.w, &phi})
    for (double& x : fld->values) x *= f;
  return f;
}

}  // namespace fks::verify
