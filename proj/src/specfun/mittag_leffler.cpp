#include "fks/specfun/mittag_leffler.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "fks/error.hpp"
#include "fks/specfun/gamma.hpp"
#include "fks/specfun/quadrature.hpp"

namespace fks::specfun {

void AccuracyBudget::validate() const {
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0) || !(abs_tol + rel_tol > 0.0))
    throw Error(ErrorKind::domain, "AccuracyBudget: need abs_tol, rel_tol >= 0 and abs_tol + rel_tol > 0");
  if (max_terms < 16) throw Error(ErrorKind::domain, "AccuracyBudget: max_terms must be >= 16");
}

bool AccuracyBudget::met(double err, double value) const {
  return std::isfinite(err) && err <= abs_tol + rel_tol * std::abs(value);
}

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();

struct Eval {
  double value = std::numeric_limits<double>::quiet_NaN();
  double error = std::numeric_limits<double>::infinity();
};

// Neumaier compensated accumulator.
struct Kahan {
  double s = 0.0, c = 0.0, abs_sum = 0.0;
  void add(double x) {
    double t = s + x;
    if (std::abs(s) >= std::abs(x))
      c += (s - t) + x;
    else
      c += (x - t) + s;
    s = t;
    abs_sum += std::abs(x);
  }
  double result() const { return s + c; }
};

std::string describe(double a, double b, double z) {
  std::ostringstream os;
  os.precision(17);
  os << "(alpha=" << a << ", beta=" << b << ", z=" << z << ")";
  return os.str();
}

// sum_k z^k / Gamma(alpha k + beta)
Eval taylor(double alpha, double beta, double z, const AccuracyBudget& budget) {
  Eval out;
  if (z == 0.0) {
    out.value = rgamma(beta);
    out.error = 0.0;
    return out;
  }
  const double lz = std::log(std::abs(z));
  // Largest term is near k* with alpha k* ~ |z|^{1/alpha}; bail out early when
  // its magnitude makes the rounding estimate hopeless or overflows.
  {
    double kstar = std::pow(std::abs(z), 1.0 / alpha) / alpha;
    if (kstar > budget.max_terms) return out;
    double lmax = -std::numeric_limits<double>::infinity();
    for (double k : {std::floor(kstar), std::ceil(kstar)}) {
      int sg = 1;
      lmax = std::max(lmax, k * lz - lgamma_abs(alpha * k + beta, &sg));
    }
    if (lmax > 700.0) return out;
    // for z < 0 the value is at most about 1.2 in magnitude
    if (z < 0.0 && 8.0 * eps * std::exp(lmax) > 10.0 * (budget.abs_tol + budget.rel_tol)) return out;
  }
  Kahan acc;
  double tail = std::numeric_limits<double>::infinity();
  double prev_abs = std::numeric_limits<double>::infinity();
  int k = 0;
  for (; k < budget.max_terms; ++k) {
    const double arg = alpha * k + beta;
    double term;
    if (arg < 170.0 && k * lz < 700.0) {
      term = std::pow(z, k) * rgamma(arg);
    } else {
      int sg = 1;
      double lg = lgamma_abs(arg, &sg);
      term = std::exp(k * lz - lg) * sg;
      if (z < 0.0 && (k % 2)) term = -term;
    }
    acc.add(term);
    const double at = std::abs(term);
    if (k > 2 && at <= prev_abs && at <= 0.25 * eps * std::abs(acc.result())) {
      tail = at;
      break;
    }
    if (k > 2 && at <= prev_abs && at == 0.0) {
      tail = 0.0;
      break;
    }
    prev_abs = at;
  }
  if (k >= budget.max_terms) return out;
  out.value = acc.result();
  out.error = 8.0 * eps * acc.abs_sum + tail;
  return out;
}

// -sum_{k=1}^{K} z^{-k} / Gamma(beta - alpha k), optimally truncated, for z < 0.
// For alpha = 1 the exponentially small e^z z^{1-beta} piece is folded into the
// error estimate.
Eval asymptotic(double alpha, double beta, double z) {
  Eval out;
  if (!(z < 0.0)) return out;
  double terms[ml_asymptotic_terms + 3];
  for (int k = 1; k <= ml_asymptotic_terms + 2; ++k) terms[k] = std::pow(z, -k) * rgamma(beta - alpha * k);
  // optimal truncation: stop before the magnitudes start to grow
  int K = ml_asymptotic_terms;
  for (int k = 2; k <= ml_asymptotic_terms; ++k) {
    double ak = std::abs(terms[k]), aprev = std::abs(terms[k - 1]);
    if (ak > aprev && aprev != 0.0) {
      K = k - 1;
      break;
    }
  }
  Kahan acc;
  for (int k = 1; k <= K; ++k) acc.add(-terms[k]);
  out.value = acc.result();
  out.error = std::max(std::abs(terms[K + 1]), std::abs(terms[K + 2])) + 4.0 * eps * acc.abs_sum;
  if (alpha == 1.0) out.error += std::exp(z) * std::pow(-z, std::abs(1.0 - beta));
  return out;
}

QuadratureOptions quad_opts(const AccuracyBudget& budget) {
  QuadratureOptions o;
  o.rel_tol = 1e-14;
  o.abs_tol = 0.02 * budget.abs_tol;
  o.max_level = 10;
  return o;
}

// alpha = 1, beta > 1: E_{1,beta}(z) = (1/Gamma(beta-1)) int_0^1 e^{z s} (1-s)^{beta-2} ds.
Eval alpha_one_integral(double beta, double z, const AccuracyBudget& budget) {
  Eval out;
  const double c = rgamma(beta - 1.0);
  const double p = beta - 2.0;
  auto f = [&](double s, double, double db) { return std::exp(z * s) * (p == 0.0 ? 1.0 : std::pow(db, p)); };
  // split near the decay scale so both pieces are endpoint dominated
  double cut = (z < -1.0) ? std::min(0.5, 8.0 / -z) : 0.5;
  auto r1 = tanh_sinh([&](double s, double, double) { return std::exp(z * s) * (p == 0.0 ? 1.0 : std::pow(1.0 - s, p)); },
                      0.0, cut, quad_opts(budget));
  auto r2 = tanh_sinh(f, cut, 1.0, quad_opts(budget));
  out.value = c * (r1.value + r2.value);
  out.error = std::abs(c) * (r1.error + r2.error) + 4.0 * eps * std::abs(out.value);
  return out;
}

// Real-axis representation, valid for 0 < alpha < 1, beta < 1 + alpha, x > 0:
// E(-x) = (1/pi) int_0^inf s^{alpha-beta} e^{-s}
//           [s^alpha sin(pi(1-beta)) + x sin(pi(1-beta+alpha))]
//           / (s^{2 alpha} + 2 s^alpha x cos(alpha pi) + x^2) ds
Eval real_axis_integral(double alpha, double beta, double x, const AccuracyBudget& budget) {
  Eval out;
  const double s1 = sinpi(1.0 - beta);
  const double s2 = sinpi(1.0 - beta + alpha);
  const double ca = std::cos(alpha * std::numbers::pi);
  const double ab = alpha - beta;
  auto kern = [&](double s) -> double {
    if (s <= 0.0) return 0.0;
    const double sa = std::pow(s, alpha);
    const double den = sa * sa + 2.0 * sa * x * ca + x * x;
    const double num = sa * s1 + x * s2;
    const double pre = std::exp(ab * std::log(s) - s);
    if (pre == 0.0) return 0.0;
    return pre * num / den;
  };
  double peak = std::pow(x, 1.0 / alpha);
  if (!(peak < 40.0)) peak = 40.0;
  if (peak < 1e-280) peak = 1e-280;
  auto opts = quad_opts(budget);
  auto r1 = tanh_sinh([&](double s, double, double) { return kern(s); }, 0.0, peak, opts);
  auto r2 = exp_sinh([&](double off) { return kern(peak + off); }, opts);
  out.value = (r1.value + r2.value) / std::numbers::pi;
  out.error = (r1.error + r2.error) / std::numbers::pi + 8.0 * eps * std::abs(out.value);
  if (!std::isfinite(out.value)) out.error = std::numeric_limits<double>::infinity();
  return out;
}

Eval quadrature_route(double alpha, double beta, double z, const AccuracyBudget& budget);

// alpha = 1 with beta < 1: E_{1,beta}(z) = 1/Gamma(beta) + z E_{1,beta+1}(z)
Eval alpha_one_quadrature(double beta, double z, const AccuracyBudget& budget) {
  if (beta == 1.0) return {std::exp(z), eps * std::exp(z)};
  if (beta == 2.0) return {z == 0.0 ? 1.0 : std::expm1(z) / z, 2.0 * eps};
  if (beta > 1.0) return alpha_one_integral(beta, z, budget);
  Eval up = alpha_one_quadrature(beta + 1.0, z, budget);
  Eval out;
  out.value = rgamma(beta) + z * up.value;
  out.error = std::abs(z) * up.error + 4.0 * eps * (std::abs(rgamma(beta)) + std::abs(z * up.value));
  return out;
}

Eval quadrature_route(double alpha, double beta, double z, const AccuracyBudget& budget) {
  if (alpha == 1.0) return alpha_one_quadrature(beta, z, budget);
  if (!(z < 0.0)) return {};
  if (beta >= 1.0 + alpha) {
    // E_{a,b}(z) = (E_{a,b-a}(z) - 1/Gamma(b-a)) / z
    Eval lower = quadrature_route(alpha, beta - alpha, z, budget);
    Eval out;
    const double r = rgamma(beta - alpha);
    out.value = (lower.value - r) / z;
    out.error = (lower.error + 4.0 * eps * (std::abs(lower.value) + std::abs(r))) / std::abs(z);
    return out;
  }
  return real_axis_integral(alpha, beta, -z, budget);
}

void check_domain(double alpha, double beta, double z) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw Error(ErrorKind::domain, "mittag_leffler: alpha must lie in (0, 1] " + describe(alpha, beta, z));
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorKind::domain, "mittag_leffler: beta must be positive " + describe(alpha, beta, z));
  if (std::isnan(z) || z > ml_z_max)
    throw Error(ErrorKind::domain, "mittag_leffler: z must satisfy z <= 5 " + describe(alpha, beta, z));
}

Eval evaluate(double alpha, double beta, double z, MlRegime regime, const AccuracyBudget& budget) {
  switch (regime) {
    case MlRegime::taylor: return taylor(alpha, beta, z, budget);
    case MlRegime::asymptotic: return asymptotic(alpha, beta, z);
    case MlRegime::quadrature: return quadrature_route(alpha, beta, z, budget);
    case MlRegime::automatic: break;
  }
  return {};
}

const char* regime_name(MlRegime r) {
  switch (r) {
    case MlRegime::taylor: return "taylor";
    case MlRegime::asymptotic: return "asymptotic";
    case MlRegime::quadrature: return "quadrature";
    case MlRegime::automatic: return "automatic";
  }
  return "?";
}

struct Choice {
  MlRegime regime;
  Eval eval;
};

Choice choose(double alpha, double beta, double z, const AccuracyBudget& budget) {
  if (z == 0.0) return {MlRegime::taylor, {rgamma(beta), 0.0}};
  if (alpha == 1.0 && (beta == 1.0 || beta == 2.0)) return {MlRegime::quadrature, alpha_one_quadrature(beta, z, budget)};
  if (z > 0.0 || std::abs(z) <= ml_taylor_radius) {
    Eval t = taylor(alpha, beta, z, budget);
    if (budget.met(t.error, t.value) || z > 0.0) return {MlRegime::taylor, t};
  }
  if (z <= ml_asymptotic_threshold) {
    Eval a = asymptotic(alpha, beta, z);
    if (budget.met(a.error, a.value)) return {MlRegime::asymptotic, a};
  }
  return {MlRegime::quadrature, quadrature_route(alpha, beta, z, budget)};
}

}  // namespace

double mittag_leffler(double alpha, double beta, double z, const AccuracyBudget& budget) {
  budget.validate();
  check_domain(alpha, beta, z);
  Choice c = choose(alpha, beta, z, budget);
  if (!std::isfinite(c.eval.value)) {
    if (z > 0.0) throw Error(ErrorKind::overflow, "mittag_leffler: value overflows " + describe(alpha, beta, z));
    throw Error(ErrorKind::accuracy_not_met, std::string("mittag_leffler: ") + regime_name(c.regime) +
                                                 " route failed " + describe(alpha, beta, z));
  }
  if (!budget.met(c.eval.error, c.eval.value)) {
    std::ostringstream os;
    os << "mittag_leffler: " << regime_name(c.regime) << " error estimate " << c.eval.error
       << " exceeds budget " << describe(alpha, beta, z);
    throw Error(ErrorKind::accuracy_not_met, os.str());
  }
  return c.eval.value;
}

double mittag_leffler(double alpha, double beta, double z, MlRegime regime, const AccuracyBudget& budget) {
  if (regime == MlRegime::automatic) return mittag_leffler(alpha, beta, z, budget);
  budget.validate();
  check_domain(alpha, beta, z);
  Eval e = evaluate(alpha, beta, z, regime, budget);
  if (!std::isfinite(e.value) || !budget.met(e.error, e.value)) {
    std::ostringstream os;
    os << "mittag_leffler: forced " << regime_name(regime) << " route cannot meet budget (estimate " << e.error
       << ") " << describe(alpha, beta, z);
    throw Error(ErrorKind::accuracy_not_met, os.str());
  }
  return e.value;
}

MlRegime mittag_leffler_regime(double alpha, double beta, double z, const AccuracyBudget& budget) {
  budget.validate();
  check_domain(alpha, beta, z);
  return choose(alpha, beta, z, budget).regime;
}

}  // namespace fks::specfun
