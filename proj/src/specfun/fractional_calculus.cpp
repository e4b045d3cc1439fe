#include "fks/specfun/fractional_calculus.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"
#include "fks/specfun/gamma.hpp"
#include "fks/specfun/mittag_leffler.hpp"
#include "fks/specfun/quadrature.hpp"

namespace fks::specfun {

TimeSeries::TimeSeries(std::vector<double> times, std::vector<double> values)
    : t(std::move(times)), y(std::move(values)) {
  validate();
}

void TimeSeries::validate() const {
  if (t.size() != y.size()) throw Error(ErrorKind::size_mismatch, "TimeSeries: t and y lengths differ");
  if (t.empty()) return;
  if (!(t[0] >= 0.0)) throw Error(ErrorKind::domain, "TimeSeries: t[0] must be >= 0");
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw Error(ErrorKind::domain, "TimeSeries: t must be strictly increasing");
}

bool TimeSeries::is_uniform(double rel_tol) const {
  if (t.size() < 2) return true;
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  for (std::size_t i = 1; i < t.size(); ++i)
    if (std::abs((t[i] - t[i - 1]) - dt) > rel_tol * dt) return false;
  return true;
}

namespace {

double uniform_step(const TimeSeries& s, const char* who) {
  s.validate();
  if (!s.is_uniform()) throw Error(ErrorKind::nonuniform_mesh, std::string(who) + ": time mesh is not uniform");
  if (s.size() < 2) return 0.0;
  return (s.t.back() - s.t.front()) / static_cast<double>(s.size() - 1);
}

void check_order(double alpha, const char* who) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    std::ostringstream os;
    os << who << ": alpha = " << alpha << " outside (0, 1)";
    throw Error(ErrorKind::domain, os.str());
  }
}

}  // namespace

TimeSeries rl_integral(const TimeSeries& series, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) check_order(alpha, "rl_integral");
  const double dt = uniform_step(series, "rl_integral");
  const std::size_t N = series.size();
  std::vector<double> out(N, 0.0);
  if (N < 2) return TimeSeries(series.t, out);
  const double a1 = alpha + 1.0;
  const double scale = std::pow(dt, alpha) * rgamma(alpha + 2.0);
  // (m)^{α+1} table
  std::vector<double> p(N + 1);
  for (std::size_t m = 0; m <= N; ++m) p[m] = std::pow(static_cast<double>(m), a1);
  const auto& y = series.y;
  for (std::size_t n = 1; n < N; ++n) {
    const double dn = static_cast<double>(n);
    double acc = (p[n - 1] - (dn - alpha - 1.0) * std::pow(dn, alpha)) * y[0];
    for (std::size_t j = 1; j < n; ++j) acc += (p[n - j + 1] - 2.0 * p[n - j] + p[n - j - 1]) * y[j];
    acc += y[n];
    out[n] = scale * acc;
  }
  return TimeSeries(series.t, std::move(out));
}

std::vector<double> l1_weights(std::size_t n, double alpha) {
  std::vector<double> b(n);
  const double e = 1.0 - alpha;
  for (std::size_t k = 0; k < n; ++k)
    b[k] = std::pow(static_cast<double>(k + 1), e) - std::pow(static_cast<double>(k), e);
  return b;
}

TimeSeries caputo_l1(const TimeSeries& series, double alpha) {
  check_order(alpha, "caputo_l1");
  if (series.size() < 2) throw Error(ErrorKind::size_mismatch, "caputo_l1: need at least two nodes");
  const double dt = uniform_step(series, "caputo_l1");
  const std::size_t N = series.size();
  const auto b = l1_weights(N, alpha);
  const double scale = std::pow(dt, -alpha) * rgamma(2.0 - alpha);
  const auto& y = series.y;
  std::vector<double> out(N, 0.0);
  for (std::size_t n = 1; n < N; ++n) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) acc += b[k] * (y[n - k] - y[n - k - 1]);
    out[n] = scale * acc;
  }
  return TimeSeries(series.t, std::move(out));
}

double laplace_identity_residual(double alpha, double beta, double a, double s) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw Error(ErrorKind::domain, "laplace_identity_residual: alpha outside (0, 1]");
  if (!(beta > 0.0) || !(a > 0.0)) throw Error(ErrorKind::domain, "laplace_identity_residual: need beta > 0, a > 0");
  if (!(s > std::pow(a, 1.0 / alpha)))
    throw Error(ErrorKind::domain, "laplace_identity_residual: need s > a^{1/alpha}");

  // |E_{α,β}(-x)| <= 1/Γ(β) on x >= 0 when β >= α (complete monotonicity);
  // otherwise use a sampled maximum with a safety factor.
  double B = std::abs(rgamma(beta));
  if (beta < alpha) {
    for (double x = 0.0; x <= 50.0; x += 0.25) B = std::max(B, std::abs(mittag_leffler(alpha, beta, -x)));
    B *= 2.0;
  }
  B = std::max(B, 1e-300);
  // tail ∫_T^∞ e^{-st} t^{β-1} B dt <= 2 B T^{β-1} e^{-sT} / s once sT >= 2(β-1)
  constexpr double tail_target = 1e-10;
  double T = 1.0;
  auto tail = [&](double TT) { return 2.0 * B * std::pow(TT, beta - 1.0) * std::exp(-s * TT) / s; };
  while (!(s * T >= 2.0 * (beta - 1.0) && tail(T) < tail_target)) {
    T *= 2.0;
    if (T > 1e6) throw Error(ErrorKind::tail_truncation, "laplace_identity_residual: no truncation T <= 1e6");
  }
  auto f = [&](double t, double da, double) {
    const double x = a * std::pow(t, alpha);
    return std::exp(-s * t) * std::pow(da, beta - 1.0) * mittag_leffler(alpha, beta, -x);
  };
  QuadratureOptions o;
  o.rel_tol = 1e-12;
  o.abs_tol = 1e-13;
  const double cut = std::min(T, 1.0 / s);
  auto r1 = tanh_sinh(f, 0.0, cut, o);
  auto r2 = tanh_sinh([&](double t, double, double) {
    const double x = a * std::pow(t, alpha);
    return std::exp(-s * t) * std::pow(t, beta - 1.0) * mittag_leffler(alpha, beta, -x);
  }, cut, T, o);
  const double lhs = r1.value + r2.value;
  const double rhs = std::pow(s, alpha - beta) / (std::pow(s, alpha) + a);
  return std::abs(lhs - rhs);
}

}  // namespace fks::specfun
