#include "fks/specfun/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace fks::specfun {

namespace {

bool tolerance_met(double err, double value, const QuadratureOptions& o) {
  return err <= std::max(o.abs_tol, o.rel_tol * std::abs(value));
}

QuadratureResult failed() {
  QuadratureResult r;
  r.value = std::numeric_limits<double>::quiet_NaN();
  r.error = std::numeric_limits<double>::infinity();
  return r;
}

}  // namespace

QuadratureResult tanh_sinh(const std::function<double(double, double, double)>& f, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult res;
  if (!(b > a)) {
    res.converged = (a == b);
    return res;
  }
  // Boost hands over xc = a - x (< 0) near the left end and b - x near the right end.
  auto g = [&](double x, double xc) {
    if (xc < 0.0) return f(x, -xc, b - x);
    return f(x, x - a, xc);
  };
  try {
    boost::math::quadrature::tanh_sinh<double> q(opts.max_level);
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    res.value = q.integrate(g, a, b, opts.rel_tol, &err, &l1, &levels);
    // Boost reports the level difference of the integral mapped to [-1, 1]
    res.error = err * 0.5 * (b - a);
    res.levels = static_cast<int>(levels);
  } catch (const std::exception&) {
    return failed();
  }
  res.converged = std::isfinite(res.value) && tolerance_met(res.error, res.value, opts);
  return res;
}

QuadratureResult tanh_sinh(const Integrand& f, double a, double b, const QuadratureOptions& opts) {
  return tanh_sinh([&f](double x, double, double) { return f(x); }, a, b, opts);
}

QuadratureResult exp_sinh(const Integrand& f, const QuadratureOptions& opts) {
  QuadratureResult res;
  try {
    boost::math::quadrature::exp_sinh<double> q(opts.max_level);
    double err = 0.0, l1 = 0.0;
    std::size_t levels = 0;
    res.value = q.integrate(f, 0.0, std::numeric_limits<double>::infinity(), opts.rel_tol, &err, &l1, &levels);
    res.error = err;
    res.levels = static_cast<int>(levels);
  } catch (const std::exception&) {
    return failed();
  }
  res.converged = std::isfinite(res.value) && tolerance_met(res.error, res.value, opts);
  return res;
}

}  // namespace fks::specfun
