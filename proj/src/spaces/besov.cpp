#include "fks/spaces/besov.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"

namespace fks::spaces {

void BesovParams::validate(int d) const {
  if (!(p > 1.0) || !std::isfinite(p) || !(lambda >= 0.0 && lambda < d) || !(r >= 1.0) || !std::isfinite(s)) {
    std::ostringstream os;
    os << "BesovParams: need 1 < p < inf, 0 <= lambda < d = " << d << ", r >= 1, got (s=" << s << ", p=" << p
       << ", lambda=" << lambda << ", r=" << r << ")";
    throw Error(ErrorKind::domain, os.str());
  }
}

double sequence_norm(const std::vector<double>& a, double r) {
  if (std::isinf(r)) {
    double m = 0.0;
    for (double v : a) m = std::max(m, v);
    return m;
  }
  double acc = 0.0;
  for (double v : a) acc += std::pow(v, r);
  return std::pow(acc, 1.0 / r);
}

std::vector<double> besov_shell_terms(const Field& f, const BesovParams& bp, const LPBank& bank,
                                      const MorreyOptions& opts) {
  f.validate();
  bp.validate(f.grid.d);
  std::vector<double> out;
  out.reserve(bank.shells());
  for (int k = bank.k_min; k <= bank.k_max; ++k)
    out.push_back(std::exp2(k * bp.s) * morrey_norm(lp_project(f, k, bank), bp.morrey(), opts));
  return out;
}

double besov_morrey_norm(const Field& f, const BesovParams& bp, const LPBank& bank, const MorreyOptions& opts) {
  return sequence_norm(besov_shell_terms(f, bp, bank, opts), bp.r);
}

}  // namespace fks::spaces
