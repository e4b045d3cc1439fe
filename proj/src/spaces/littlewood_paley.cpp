#include "fks/spaces/littlewood_paley.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"
#include "fks/spectral/fft.hpp"

namespace fks::spaces {

namespace {
constexpr double r_lo = 2.0 / 3.0, r_hi = 3.0;
}

double lp_profile(double r) {
  if (!(r > r_lo && r < r_hi)) return 0.0;
  return std::exp(-1.0 / (r - r_lo) - 1.0 / (r_hi - r));
}

double LPBank::value(int k, double xi) const {
  if (!(xi > 0.0)) return 0.0;
  const double num = lp_profile(std::ldexp(xi, -k));
  if (num == 0.0) return 0.0;
  // at most three j have g(2^{-j}|ξ|) > 0
  const int j0 = static_cast<int>(std::floor(std::log2(xi / r_hi)));
  double den = 0.0;
  for (int j = j0; j <= j0 + 4; ++j) den += lp_profile(std::ldexp(xi, -j));
  return num / den;
}

LPBank lp_bank(const GridSpec& g, double max_xi) {
  g.validate();
  LPBank b;
  b.grid = g;
  const double xi_min = g.k0();
  const double xi_full = g.k0() * (g.n / 2) * std::sqrt(static_cast<double>(g.d));
  b.max_xi = (max_xi > 0.0) ? std::min(max_xi, xi_full) : xi_full;
  // first k with 3·2^k > ξ_min, last k with (2/3)·2^k < max_xi
  b.k_min = static_cast<int>(std::floor(std::log2(xi_min / r_hi))) + 1;
  while (std::ldexp(r_hi, b.k_min - 1) > xi_min) --b.k_min;
  while (!(std::ldexp(r_hi, b.k_min) > xi_min)) ++b.k_min;
  b.k_max = static_cast<int>(std::ceil(std::log2(b.max_xi / r_lo))) - 1;
  while (std::ldexp(r_lo, b.k_max + 1) < b.max_xi) ++b.k_max;
  while (!(std::ldexp(r_lo, b.k_max) < b.max_xi)) --b.k_max;
  if (b.shells() < 3) {
    std::ostringstream os;
    os << "lp_bank: only " << b.shells() << " dyadic shells fit the band (" << xi_min << ", " << b.max_xi << "]";
    throw Error(ErrorKind::band_too_narrow, os.str());
  }
  return b;
}

Field lp_project(const Field& f, int k, const LPBank& bank) {
  f.validate();
  if (f.grid != bank.grid) throw Error(ErrorKind::size_mismatch, "lp_project: field and bank grids differ");
  if (k < bank.k_min || k > bank.k_max) {
    std::ostringstream os;
    os << "lp_project: shell " << k << " outside [" << bank.k_min << ", " << bank.k_max << "]";
    throw Error(ErrorKind::out_of_range, os.str());
  }
  auto F = spectral::transform(f);
  const auto& mt = spectral::modes(f.grid);
  const std::size_t N = f.points();
  std::vector<double> w(N);
  for (std::size_t p = 0; p < N; ++p) w[p] = mt.xi_norm[p] <= bank.max_xi ? bank.value(k, mt.xi_norm[p]) : 0.0;
  for (int c = 0; c < F.components; ++c) {
    auto* z = F.component(c);
    for (std::size_t p = 0; p < N; ++p) z[p] *= w[p];
  }
  return spectral::inverse_transform(F);
}

}  // namespace fks::spaces
