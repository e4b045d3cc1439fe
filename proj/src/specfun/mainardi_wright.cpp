#include "fks/specfun/mainardi_wright.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <vector>

#include "fks/error.hpp"
#include "fks/specfun/gamma.hpp"
#include "fks/specfun/quadrature.hpp"

namespace fks::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double series_accept = 0.1 * mw_abs_tol;

struct SeriesEval {
  double value = 0.0;
  double error = std::numeric_limits<double>::infinity();
};

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= mw_alpha_max)) {
    std::ostringstream os;
    os << "mainardi_wright: alpha = " << alpha << " outside (0, " << mw_alpha_max << "]";
    throw Error(ErrorKind::domain, os.str());
  }
}

// M(θ) = (1/π) Σ_{n≥1} (-θ)^{n-1} Γ(αn) sin(παn) / (n-1)!
// (reflected form of Σ (-θ)^k / (k! Γ(1-α-αk))), Neumaier summation.
SeriesEval series(double alpha, double theta) {
  SeriesEval out;
  if (theta == 0.0) {
    out.value = rgamma(1.0 - alpha);
    out.error = 0.0;
    return out;
  }
  const double lt = std::log(theta);
  double s = 0.0, c = 0.0, round_err = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  double tail = std::numeric_limits<double>::infinity();
  for (int n = 1; n < 20000; ++n) {
    const double sp = sinpi(alpha * n);
    double term = 0.0;
    // exp of a large log magnitude carries its absolute rounding as relative error
    double lsize = 0.0;
    if (sp != 0.0) {
      const double lg1 = std::lgamma(static_cast<double>(n)), lg2 = std::lgamma(alpha * n);
      const double lmag = (n - 1) * lt - lg1 + lg2;
      if (lmag > 700.0) return out;
      term = std::exp(lmag) * sp;
      if ((n - 1) % 2) term = -term;
      lsize = std::abs((n - 1) * lt) + std::abs(lg1) + std::abs(lg2);
    }
    const double t = s + term;
    if (std::abs(s) >= std::abs(term))
      c += (s - t) + term;
    else
      c += (term - t) + s;
    s = t;
    round_err += std::abs(term) * (8.0 + 2.0 * lsize);
    const double bound = std::exp((n - 1) * lt - std::lgamma(static_cast<double>(n)) + std::lgamma(alpha * n));
    if (n > 4 && bound <= prev && bound <= 0.1 * eps * std::max(std::abs(s + c), 1e-300)) {
      tail = bound;
      break;
    }
    if (n > 4 && bound < 1e-300) {
      tail = bound;
      break;
    }
    prev = bound;
  }
  out.value = (s + c) / std::numbers::pi;
  out.error = (eps * round_err + tail) / std::numbers::pi;
  return out;
}

// Positive Zolotarev-Kanter representation:
// M(x) = x^{a/(1-a)} / (π(1-a)) ∫_0^π A(φ) exp(-x^{1/(1-a)} A(φ)) dφ,
// A(φ) = sin(aφ)^{a/(1-a)} sin((1-a)φ) / sin(φ)^{1/(1-a)}.
SeriesEval integral(double alpha, double theta) {
  SeriesEval out;
  const double a = alpha, b = 1.0 - alpha;
  const double lx = std::log(theta);
  const double X = std::exp(lx / b);
  const double lpre = (a / b) * lx - std::log(std::numbers::pi * b);
  auto f = [&](double phi, double da, double db) -> double {
    // sin φ from whichever end is nearer, to keep relative accuracy at φ -> π
    const double sphi = (da < db) ? std::sin(da) : std::sin(db);
    const double sa = std::sin(a * phi);
    const double sb = (da < db) ? std::sin(b * phi) : std::sin(b * (std::numbers::pi - db));
    if (sphi <= 0.0 || sa <= 0.0 || sb <= 0.0) return 0.0;
    const double logA = (a / b) * std::log(sa) + std::log(sb) - std::log(sphi) / b;
    const double A = std::exp(logA);
    const double e = lpre + logA - X * A;
    if (e < -745.0) return 0.0;
    return std::exp(e);
  };
  QuadratureOptions o;
  o.rel_tol = 1e-13;
  o.abs_tol = 1e-3 * mw_abs_tol;
  o.max_level = 10;
  auto r = tanh_sinh(f, 0.0, std::numbers::pi, o);
  out.value = r.value;
  out.error = r.error + 8.0 * eps * std::abs(r.value);
  if (!std::isfinite(out.value)) out.error = std::numeric_limits<double>::infinity();
  return out;
}

}  // namespace

double mainardi_wright(double alpha, double theta, MwMethod method) {
  check_alpha(alpha);
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    std::ostringstream os;
    os << "mainardi_wright: theta = " << theta << " must be finite and >= 0";
    throw Error(ErrorKind::domain, os.str());
  }
  auto fail = [&](const char* route, double err) {
    std::ostringstream os;
    os << "mainardi_wright: " << route << " route error estimate " << err << " exceeds " << mw_abs_tol
       << " at (alpha=" << alpha << ", theta=" << theta << ")";
    throw Error(ErrorKind::accuracy_not_met, os.str());
  };
  if (method == MwMethod::series) {
    SeriesEval s = series(alpha, theta);
    if (!(s.error <= mw_abs_tol)) fail("series", s.error);
    return s.value;
  }
  if (method == MwMethod::integral) {
    if (theta == 0.0) return rgamma(1.0 - alpha);
    SeriesEval q = integral(alpha, theta);
    if (!(q.error <= mw_abs_tol)) fail("integral", q.error);
    return q.value;
  }
  SeriesEval s = series(alpha, theta);
  if (s.error <= series_accept) return s.value;
  SeriesEval q = integral(alpha, theta);
  if (!(q.error <= mw_abs_tol)) fail("integral", q.error);
  return q.value;
}

double mainardi_wright_series_limit(double alpha) {
  check_alpha(alpha);
  auto ok = [&](double th) { return series(alpha, th).error <= mw_abs_tol; };
  double lo = 0.0, hi = 1.0;
  while (ok(hi) && hi < 1e4) {
    lo = hi;
    hi *= 2.0;
  }
  if (hi >= 1e4) return hi;
  for (int i = 0; i < 40; ++i) {
    double mid = 0.5 * (lo + hi);
    (ok(mid) ? lo : hi) = mid;
  }
  return lo;
}

double mainardi_wright_cutoff(double alpha) {
  check_alpha(alpha);
  // M_α(θ) decays like exp(-Y), Y = (1-α)(α^α θ)^{1/(1-α)}; Y = 60 gives ~1e-26.
  const double b = 1.0 - alpha;
  return 1.2 * std::pow(60.0 / b, b) / std::pow(alpha, alpha);
}

double wright_moment_exact(double alpha, double rho) {
  if (!(rho > -1.0)) throw Error(ErrorKind::domain, "wright_moment_exact: rho must exceed -1");
  return std::exp(lgamma_abs(1.0 + rho) - lgamma_abs(1.0 + alpha * rho));
}

double wright_moment(double alpha, double rho, int quad_nodes) {
  check_alpha(alpha);
  if (!(rho > -1.0)) throw Error(ErrorKind::domain, "wright_moment: rho must exceed -1");
  if (quad_nodes < 16) throw Error(ErrorKind::domain, "wright_moment: quad_nodes must be >= 16");
  // θ = e^s, dθ = θ ds; integrand M(e^s) e^{s(ρ+1)}
  const double s_lo = -40.0 / (rho + 1.0);
  const double s_hi = std::log(mainardi_wright_cutoff(alpha));
  const int n_fine = 2 * quad_nodes - 1;
  const double h = (s_hi - s_lo) / (n_fine - 1);
  double coarse = 0.0, fine = 0.0;
  for (int i = 0; i < n_fine; ++i) {
    const double s = s_lo + i * h;
    const double th = std::exp(s);
    double v = mainardi_wright(alpha, th) * std::exp(s * (rho + 1.0));
    const double wend = (i == 0 || i == n_fine - 1) ? 0.5 : 1.0;
    fine += wend * v;
    if (i % 2 == 0) coarse += wend * v;
  }
  fine *= h;
  coarse *= 2.0 * h;
  const double diff = std::abs(fine - coarse);
  if (!(diff <= 1e-8 * std::abs(fine) + 1e-14)) {
    std::ostringstream os;
    os << "wright_moment: refinements differ by " << diff << " (alpha=" << alpha << ", rho=" << rho
       << ", nodes=" << quad_nodes << ")";
    throw Error(ErrorKind::quadrature_nonconvergence, os.str());
  }
  return fine;
}

}  // namespace fks::specfun
