#include "fks/specfun/gamma.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fks/error.hpp"

namespace fks::specfun {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && std::floor(x) == x; }

}  // namespace

double sinpi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  // reduce to r in [-1, 1] with sin(pi x) = sin(pi r)
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.0 || r == 1.0 || r == -1.0) return 0.0;
  if (r > 0.5) r = 1.0 - r;
  if (r < -0.5) r = -1.0 - r;
  return std::sin(std::numbers::pi * r);
}

double lgamma_abs(double x, int* sign) {
  int s = 1;
  double v = ::lgamma_r(x, &s);
  if (sign) *sign = s;
  return v;
}

double gamma_fn(double x) {
  if (std::isnan(x)) throw Error(ErrorKind::domain, "gamma_fn: NaN argument");
  if (is_nonpositive_integer(x)) {
    std::ostringstream os;
    os << "gamma_fn: pole at x = " << x;
    throw Error(ErrorKind::pole, os.str());
  }
  double g = std::tgamma(x);
  if (!std::isfinite(g)) {
    std::ostringstream os;
    os << "gamma_fn: |Gamma(" << x << ")| exceeds double range";
    throw Error(ErrorKind::overflow, os.str());
  }
  if (g == 0.0) {
    std::ostringstream os;
    os << "gamma_fn: Gamma(" << x << ") underflows";
    throw Error(ErrorKind::overflow, os.str());
  }
  return g;
}

double rgamma(double x) {
  if (std::isnan(x)) return x;
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 0.0) {
    if (x < 170.0) return 1.0 / std::tgamma(x);
    return std::exp(-lgamma_abs(x));
  }
  if (x > -169.0) return 1.0 / std::tgamma(x);
  // reflection: 1/Gamma(x) = Gamma(1-x) sin(pi x) / pi
  double lg = lgamma_abs(1.0 - x);
  double s = sinpi(x);
  if (lg > 700.0) return std::copysign(std::numeric_limits<double>::infinity(), s);
  return std::exp(lg) * s / std::numbers::pi;
}

}  // namespace fks::specfun
