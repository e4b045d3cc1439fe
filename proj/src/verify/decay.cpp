#include "fks/verify/decay.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "fks/error.hpp"
#include "fks/spaces/besov.hpp"
#include "fks/spaces/littlewood_paley.hpp"
#include "fks/spectral/fft.hpp"
#include "fks/spectral/operators.hpp"
#include "fks/spectral/solution_ops.hpp"

namespace fks::verify {

const char* to_string(DecayKind k) {
  switch (k) {
    case DecayKind::heat: return "heat";
    case DecayKind::S: return "S";
    case DecayKind::P: return "P";
  }
  return "?";
}

std::string NormSpec::describe() const {
  std::ostringstream os;
  if (besov)
    os << "N^{" << s << "}_{" << p << "," << lambda << "," << r << "}";
  else if (lambda == 0.0)
    os << "L^" << p;
  else
    os << "M_{" << p << "," << lambda << "}";
  return os.str();
}

namespace {

// time exponent of the spatial scale squared-ish: τ = t^a
double time_power(const DecayRequest& req) { return req.kind == DecayKind::heat ? 1.0 : req.params.alpha; }

double exponent_sum(const DecayRequest& req, int d) {
  const double D = d - req.norm.lambda;
  const double s2 = req.norm.besov ? req.norm.s : 0.0;
  return req.theta_order + s2 - req.s1 + D / req.p1 - D / req.norm.p;
}

}  // namespace

double predicted_slope(const DecayRequest& req, int d) {
  req.params.validate();
  const double sum = exponent_sum(req, d);
  const double cap = (req.kind == DecayKind::P) ? 2.0 * req.params.beta : req.params.beta;
  if (!(sum > 0.0) || (req.kind != DecayKind::heat && !(sum < cap))) {
    std::ostringstream os;
    os << "decay: exponent sum " << sum << " outside (0, " << cap << ") for kind " << to_string(req.kind);
    throw Error(ErrorKind::domain, os.str());
  }
  return -(time_power(req) / req.params.beta) * sum;
}

DecayWindow default_window(const spectral::GridSpec& g, const DecayRequest& req, int samples) {
  const double b = req.params.beta;
  const double a = time_power(req);
  DecayWindow w;
  w.t_a = std::pow(4.0 * std::pow(g.spacing(), b), 1.0 / a);
  w.t_b = std::pow(std::pow(g.box_length / 16.0, b), 1.0 / a);
  w.samples = samples;
  return w;
}

void check_window(const spectral::GridSpec& g, const DecayRequest& req, const DecayWindow& w) {
  const double b = req.params.beta;
  const double a = time_power(req);
  const double ta = std::pow(w.t_a, a), tb = std::pow(w.t_b, a);
  const double lo = 4.0 * std::pow(g.spacing(), b);
  const double hi = std::pow(g.box_length / 8.0, b);
  std::ostringstream os;
  if (!(w.t_a > 0.0) || !(w.t_b > w.t_a)) {
    os << "decay window [" << w.t_a << ", " << w.t_b << "] is empty";
    throw Error(ErrorKind::window_invalid, os.str());
  }
  if (ta < lo * (1 - 1e-12)) {
    os << "decay window starts at effective time " << ta << " below 4 h^beta = " << lo;
    throw Error(ErrorKind::window_invalid, os.str());
  }
  if (tb > hi * (1 + 1e-12)) {
    os << "decay window ends at effective time " << tb << " beyond (L/8)^beta = " << hi;
    throw Error(ErrorKind::window_invalid, os.str());
  }
}

double evolved_norm(const Field& f, double t, const DecayRequest& req) {
  const auto F = spectral::transform(f);
  spectral::SpectralCoeffs G = F;
  switch (req.kind) {
    case DecayKind::heat: G = spectral::heat_op(F, t, req.params.beta, req.theta_order); break;
    case DecayKind::S: G = spectral::solution_op(F, t, req.params, spectral::OperatorKind::S, req.theta_order); break;
    case DecayKind::P: G = spectral::solution_op(F, t, req.params, spectral::OperatorKind::P, req.theta_order); break;
  }
  const Field g = spectral::inverse_transform(G);
  if (req.norm.besov) {
    spaces::BesovParams bp{req.norm.s, req.norm.p, req.norm.lambda, req.norm.r};
    return spaces::besov_morrey_norm(g, bp, spaces::lp_bank(g.grid), req.norm.morrey);
  }
  return spaces::morrey_norm(g, spaces::MorreyParams{req.norm.p, req.norm.lambda}, req.norm.morrey);
}

DecayReport measure_decay(const Field& f, const DecayRequest& req, const DecayWindow& w) {
  if (w.samples < 8) throw Error(ErrorKind::regression_conditioning, "decay: need at least 8 samples");
  if (!(w.t_a > 0.0) || !(w.t_b > w.t_a * 1.5))
    throw Error(ErrorKind::regression_conditioning, "decay: window too narrow for a slope fit");
  DecayReport rep;
  std::ostringstream od;
  od << to_string(req.kind) << "(alpha=" << req.params.alpha << ", beta=" << req.params.beta
     << ", theta=" << req.theta_order << ")";
  rep.operator_desc = od.str();
  rep.norm_desc = req.norm.describe();
  rep.t_a = w.t_a;
  rep.t_b = w.t_b;
  const double la = std::log(w.t_a), lb = std::log(w.t_b);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < w.samples; ++i) {
    const double lt = la + (lb - la) * i / (w.samples - 1);
    const double t = std::exp(lt);
    const double nv = evolved_norm(f, t, req);
    if (!(nv > 0.0) || !std::isfinite(nv)) {
      std::ostringstream os;
      os << "decay: norm " << nv << " at t = " << t << " cannot enter a log fit";
      throw Error(ErrorKind::regression_conditioning, os.str());
    }
    rep.t.push_back(t);
    rep.norm.push_back(nv);
    const double ly = std::log(nv);
    sx += lt;
    sy += ly;
    sxx += lt * lt;
    sxy += lt * ly;
  }
  const double n = w.samples;
  rep.measured_slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  rep.predicted_slope = std::nan("");
  rep.rel_err = std::nan("");
  return rep;
}

DecayReport decay_exponent(const Field& f, const DecayRequest& req, const DecayWindow& w) {
  check_window(f.grid, req, w);
  const double pred = predicted_slope(req, f.grid.d);
  DecayReport rep = measure_decay(f, req, w);
  rep.predicted_slope = pred;
  rep.rel_err = std::abs(rep.measured_slope - pred) / std::abs(pred);
  return rep;
}

std::string DecayReport::csv() const {
  std::ostringstream os;
  char buf[256];
  os << "t,norm,log_t,log_norm\n";
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.10g,%.10g\n", t[i], norm[i], std::log(t[i]), std::log(norm[i]));
    os << buf;
  }
  os << "measured_slope,predicted_slope,rel_err\n";
  std::snprintf(buf, sizeof buf, "%.10g,%.10g,%.6g\n", measured_slope, predicted_slope, rel_err);
  os << buf;
  return os.str();
}

Field centered_spike(const spectral::GridSpec& g) {
  Field f = spectral::spike(g);
  const double m = spectral::mean(f);
  for (double& x : f.values) x -= m;
  return f;
}

}  // namespace fks::verify
