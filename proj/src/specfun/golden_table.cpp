#include "fks/specfun/golden_table.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "fks/error.hpp"
#include "fks/specfun/gamma.hpp"
#include "fks/specfun/mainardi_wright.hpp"
#include "fks/specfun/mittag_leffler.hpp"

namespace fks::specfun {

std::vector<GoldenRecord> read_golden_table(std::istream& in) {
  std::vector<GoldenRecord> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    GoldenRecord r;
    if (!(ls >> r.name >> r.alpha >> r.beta >> r.z >> r.expected >> r.abs_tol))
      throw Error(ErrorKind::io, "golden table: malformed line " + std::to_string(lineno));
    out.push_back(r);
  }
  return out;
}

void write_golden_table(std::ostream& out, const std::vector<GoldenRecord>& records) {
  out << "# name alpha beta z expected abs_tol\n";
  char buf[256];
  for (const auto& r : records) {
    std::snprintf(buf, sizeof buf, "%s %.17g %.17g %.17g %.17g %.3g\n", r.name.c_str(), r.alpha, r.beta, r.z,
                  r.expected, r.abs_tol);
    out << buf;
  }
}

double evaluate_record(const GoldenRecord& r) {
  if (r.name == "gamma") return gamma_fn(r.z);
  if (r.name == "mittag_leffler") return mittag_leffler(r.alpha, r.beta, r.z);
  if (r.name == "mainardi_wright") return mainardi_wright(r.alpha, r.z);
  if (r.name == "wright_moment") return wright_moment(r.alpha, r.beta);
  throw Error(ErrorKind::io, "golden table: unknown function name '" + r.name + "'");
}

namespace {

// e^{x^2} erfc(x), x >= 0
double erfcx(double x) {
  if (x < 25.0) return std::exp(x * x) * std::erfc(x);
  // continued-fraction-free asymptotic form is accurate to double here
  const double ix2 = 1.0 / (2.0 * x * x);
  return (1.0 - ix2 + 3.0 * ix2 * ix2 - 15.0 * ix2 * ix2 * ix2) / (x * std::sqrt(M_PI));
}

}  // namespace

std::vector<GoldenRecord> default_golden_table(std::optional<double> alpha_filter) {
  std::vector<GoldenRecord> rows;
  auto keep = [&](double a) { return !alpha_filter || *alpha_filter == a; };

  if (!alpha_filter) {
    for (double x : {1.0, 0.5, 5.5, 2.5, -0.5, 10.25})
      rows.push_back({"gamma", 0.0, 0.0, x, gamma_fn(x), 1e-13 * std::abs(gamma_fn(x))});
  }
  const double ml_alphas[] = {1.0, 0.9, 0.8, 0.7, 0.6, 0.5, 0.3};
  const double ml_betas[] = {1.0, 0.5, 1.5};
  const double ml_z[] = {3.0, 1.0, 0.0, -1.0, -3.9, -4.1, -10.0, -39.0, -41.0, -100.0};
  for (double a : ml_alphas) {
    if (!keep(a)) continue;
    for (double b : ml_betas) {
      for (double z : ml_z) {
        double v = mittag_leffler(a, b, z);
        rows.push_back({"mittag_leffler", a, b, z, v, 1e-12 + 1e-10 * std::abs(v)});
      }
    }
  }
  // E_{1/2,1}(-x) = e^{x^2} erfc(x)
  for (auto& r : rows) {
    if (r.name == "mittag_leffler" && r.alpha == 0.5 && r.beta == 1.0 && r.z <= 0.0) {
      double ref = erfcx(-r.z);
      if (std::abs(ref - r.expected) > 1e-8) {
        std::ostringstream os;
        os << "specfun table: E_{1/2,1}(" << r.z << ") = " << r.expected << " disagrees with erfc identity " << ref;
        throw Error(ErrorKind::accuracy_not_met, os.str());
      }
    }
  }
  for (double a : {0.3, 0.5, 0.7}) {
    if (!keep(a)) continue;
    for (double th : {0.0, 0.5, 1.0, 2.0, 5.0, 10.0})
      rows.push_back({"mainardi_wright", a, 0.0, th, mainardi_wright(a, th), mw_abs_tol});
    for (double rho : {0.0, 0.5, 1.0, 2.0}) {
      double v = wright_moment_exact(a, rho);
      rows.push_back({"wright_moment", a, rho, 0.0, v, 1e-6 * v});
    }
  }
  return rows;
}

}  // namespace fks::specfun
