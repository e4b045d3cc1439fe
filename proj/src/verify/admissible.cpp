#include "fks/verify/admissible.hpp"

#include <cmath>
#include <functional>
#include <sstream>

#include "fks/error.hpp"

namespace fks::verify {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

struct Check {
  bool ok;
  std::string name;
};

}  // namespace

AdmissibleExponents admissible_params(int d, double lambda, double beta, double alpha, const std::array<double, 3>& r,
                                      const std::array<double, 3>& q) {
  std::ostringstream os;
  if (d < 1 || d > 3) {
    os << "admissible_params: d = " << d << " not in {1, 2, 3}";
    throw Error(ErrorKind::domain, os.str());
  }
  if (!(lambda >= 0.0 && lambda < d)) throw Error(ErrorKind::domain, "admissible_params: need 0 <= lambda < d");
  if (!(beta > 1.0 && beta < 2.0)) throw Error(ErrorKind::domain, "admissible_params: need 1 < beta < 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorKind::domain, "admissible_params: need 0 < alpha < 1");
  for (int j = 0; j < 3; ++j)
    if (!(r[j] > 0.0) || !(q[j] > 0.0) || !std::isfinite(r[j]) || !std::isfinite(q[j]))
      throw Error(ErrorKind::domain, "admissible_params: r and q must be positive and finite");

  AdmissibleExponents e;
  e.d = d;
  e.lambda = lambda;
  e.beta = beta;
  e.alpha = alpha;
  e.r = r;
  e.q = q;
  const double D = d - lambda;
  const double a = alpha, b = beta;
  e.betas = {b - 1.0 - D / r[0], 2.0 * b - 2.0 - D / r[1], 1.0 - D / r[2]};
  e.chis = {2 * a - 2 * a / b - 2 * a * D / (b * q[0]), 4 * a - 4 * a / b - 2 * a * D / (b * q[1]),
            2 * a / b - 2 * a * D / (b * q[2])};

  const double s12 = 1 / q[0] + 1 / q[1], s23 = 1 / q[1] + 1 / q[2];
  const double d21 = 1 / q[1] - 1 / q[0], d23 = 1 / q[1] - 1 / q[2];
  std::vector<Check> checks = {
      {r[0] > D / (b - 1), "r1 > (d-lambda)/(beta-1) = " + num(D / (b - 1))},
      {r[1] > D / (2 * b - 2), "r2 > (d-lambda)/(2beta-2) = " + num(D / (2 * b - 2))},
      {r[2] > D, "r3 > d-lambda = " + num(D)},
      {q[0] > D / (b - 1), "q1 > (d-lambda)/(beta-1) = " + num(D / (b - 1))},
      {q[1] > D / (2 * b - 2), "q2 > (d-lambda)/(2beta-2) = " + num(D / (2 * b - 2))},
      {q[1] < D / (b - 1), "q2 < (d-lambda)/(beta-1) = " + num(D / (b - 1))},
      {q[2] > D, "q3 > d-lambda = " + num(D)},
      {q[2] < D / (2 - b), "q3 < (d-lambda)/(2-beta) = " + num(D / (2 - b))},
      {s12 > (2 * b - 2) / D, "1/q1 + 1/q2 > (2beta-2)/(d-lambda) = " + num((2 * b - 2) / D)},
      {s12 < (3 * b - 3) / D, "1/q1 + 1/q2 < (3beta-3)/(d-lambda) = " + num((3 * b - 3) / D)},
      {s23 > 1 / D, "1/q2 + 1/q3 > 1/(d-lambda) = " + num(1 / D)},
      {s23 < (2 * b - 1) / D, "1/q2 + 1/q3 < (2beta-1)/(d-lambda) = " + num((2 * b - 1) / D)},
      {d21 < (b - 1) / D, "1/q2 - 1/q1 < (beta-1)/(d-lambda) = " + num((b - 1) / D)},
      {d23 < (2 * b - 3) / D, "1/q2 - 1/q3 < (2beta-3)/(d-lambda) = " + num((2 * b - 3) / D)},
  };
  for (int j = 0; j < 3; ++j) {
    const std::string J = std::to_string(j + 1);
    checks.push_back({r[j] > 1.0, "1 < r" + J});
    checks.push_back({r[j] <= q[j], "r" + J + " <= q" + J});
  }

  // positivity facts used by the bilinear estimates
  auto in01 = [](double x) { return x > 0.0 && x < 1.0; };
  const double t1 = a * D / (b * q[0]), t2 = a * D / (b * q[1]), t3 = a * D / (b * q[2]);
  checks.push_back({in01(e.chis[0]), "derived: 0 < chi1 < 1"});
  checks.push_back({in01(2 * a - 2 * a / b - t2), "derived: 0 < 2alpha - 2alpha/beta - alpha(d-lambda)/(beta q2) < 1"});
  checks.push_back({in01(2 * a - a / b - t2 - t3),
                    "derived: 0 < 2alpha - alpha/beta - alpha(d-lambda)/(beta q2) - alpha(d-lambda)/(beta q3) < 1"});
  checks.push_back({in01(3 * a - 3 * a / b - t1 - t2),
                    "derived: 0 < 3alpha - 3alpha/beta - alpha(d-lambda)/(beta q1) - alpha(d-lambda)/(beta q2) < 1"});
  checks.push_back({a - a / b - t2 + t1 > 0.0,
                    "derived: alpha - alpha/beta - alpha(d-lambda)/(beta q2) + alpha(d-lambda)/(beta q1) > 0"});
  checks.push_back({in01(a - t1 - t3), "derived: 0 < alpha - alpha(d-lambda)/(beta q1) - alpha(d-lambda)/(beta q3) < 1"});
  checks.push_back({2 * a - 3 * a / b - t2 + t3 > 0.0,
                    "derived: 2alpha - 3alpha/beta - alpha(d-lambda)/(beta q2) + alpha(d-lambda)/(beta q3) > 0"});

  for (const auto& c : checks)
    if (!c.ok) e.violations.push_back(c.name);
  e.valid = e.violations.empty();
  return e;
}

std::string describe(const AdmissibleExponents& e) {
  std::ostringstream os;
  os << "(d=" << e.d << ", lambda=" << e.lambda << ", beta=" << e.beta << ", alpha=" << e.alpha << ", r=(" << e.r[0]
     << "," << e.r[1] << "," << e.r[2] << "), q=(" << e.q[0] << "," << e.q[1] << "," << e.q[2] << ")): ";
  if (e.valid) return os.str() + "valid";
  os << "violates ";
  for (std::size_t i = 0; i < e.violations.size(); ++i) os << (i ? "; " : "") << e.violations[i];
  return os.str();
}

}  // namespace fks::verify
