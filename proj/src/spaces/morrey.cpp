#include "fks/spaces/morrey.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"
#include "fks/spectral/fft.hpp"
#include "fks/spectral/operators.hpp"

namespace fks::spaces {

using spectral::cplx;
using spectral::GridSpec;
using spectral::SpectralCoeffs;

void MorreyParams::validate(int d) const {
  if (!(p >= 1.0) || !std::isfinite(p) || !(lambda >= 0.0 && lambda < d)) {
    std::ostringstream os;
    os << "MorreyParams: need p >= 1 and 0 <= lambda < d = " << d << ", got (" << p << ", " << lambda << ")";
    throw Error(ErrorKind::domain, os.str());
  }
}

namespace {

std::vector<double> radii_for(const GridSpec& g, const MorreyOptions& opts) {
  if (opts.center_stride < 1) throw Error(ErrorKind::domain, "morrey_norm: center_stride must be >= 1");
  if (opts.radii < 0) throw Error(ErrorKind::domain, "morrey_norm: radii count must be >= 0");
  const double half = 0.5 * g.box_length;
  double R = opts.max_radius > 0.0 ? opts.max_radius : half;
  if (R > half * (1.0 + 1e-12)) {
    std::ostringstream os;
    os << "morrey_norm: radius " << R << " exceeds half the box " << half;
    throw Error(ErrorKind::radius_too_large, os.str());
  }
  const double r_min = 4.0 * g.spacing();
  std::vector<double> out;
  while (R >= r_min * (1.0 - 1e-12) && (opts.radii == 0 || static_cast<int>(out.size()) < opts.radii)) {
    out.push_back(R);
    R *= 0.5;
  }
  if (out.empty()) throw Error(ErrorKind::domain, "morrey_norm: no radius >= 4 grid cells");
  return out;
}

// |f|^p on the lattice as a scalar field
Field power_field(const Field& f, double p) {
  Field a = Field::scalar(f.grid);
  for (std::size_t i = 0; i < f.points(); ++i) {
    double m2 = 0.0;
    for (int c = 0; c < f.components; ++c) m2 += f.component(c)[i] * f.component(c)[i];
    a.values[i] = std::pow(std::sqrt(m2), p);
  }
  return a;
}

Field ball(const GridSpec& g, double R) {
  Field b = Field::scalar(g);
  const double h = g.spacing();
  for (std::size_t i = 0; i < b.points(); ++i) {
    auto idx = spectral::unflatten(g, i);
    double r2 = 0.0;
    for (int a = 0; a < g.d; ++a) {
      const double x = g.wavenumber(idx[a]) * h;  // minimum image
      r2 += x * x;
    }
    b.values[i] = (r2 <= R * R * (1.0 + 1e-12)) ? 1.0 : 0.0;
  }
  return b;
}

}  // namespace

std::vector<std::pair<double, double>> morrey_profile(const Field& f, const MorreyParams& mp,
                                                      const MorreyOptions& opts) {
  f.validate();
  mp.validate(f.grid.d);
  const GridSpec& g = f.grid;
  const auto radii = radii_for(g, opts);
  const SpectralCoeffs A = spectral::transform(power_field(f, mp.p));
  const double cell = std::pow(g.spacing(), g.d);
  const double N = static_cast<double>(g.points());
  std::vector<std::pair<double, double>> out;
  for (double R : radii) {
    SpectralCoeffs B = spectral::transform(ball(g, R));
    for (std::size_t i = 0; i < B.coeffs.size(); ++i) B.coeffs[i] *= A.coeffs[i];
    const Field conv = spectral::inverse_transform(B);
    double best = 0.0;
    for (std::size_t i = 0; i < conv.points(); ++i) {
      auto idx = spectral::unflatten(g, i);
      bool on = true;
      for (int a = 0; a < g.d; ++a) on = on && (idx[a] % opts.center_stride == 0);
      if (on) best = std::max(best, conv.values[i]);
    }
    const double integral = std::max(0.0, best * N * cell);
    out.emplace_back(R, std::pow(R, -mp.lambda / mp.p) * std::pow(integral, 1.0 / mp.p));
  }
  return out;
}

double morrey_norm(const Field& f, const MorreyParams& mp, const MorreyOptions& opts) {
  f.validate();
  mp.validate(f.grid.d);
  if (mp.lambda == 0.0) {
    radii_for(f.grid, opts);  // same argument checks
    return spectral::lp_norm(f, mp.p);
  }
  double best = 0.0;
  for (const auto& [R, v] : morrey_profile(f, mp, opts)) best = std::max(best, v);
  return best;
}

double sobolev_morrey_norm(const Field& f, double s, const MorreyParams& mp, const MorreyOptions& opts) {
  f.validate();
  if (s == 0.0) return morrey_norm(f, mp, opts);
  if (s < 0.0) {
    double scale = 0.0;
    for (double v : f.values) scale = std::max(scale, std::abs(v));
    for (int c = 0; c < f.components; ++c) {
      if (std::abs(spectral::mean(f, c)) > 1e-12 * std::max(scale, 1e-300)) {
        std::ostringstream os;
        os << "sobolev_morrey_norm: s = " << s << " < 0 needs a mean-free field (component " << c << " has mean "
           << spectral::mean(f, c) << ")";
        throw Error(ErrorKind::domain, os.str());
      }
    }
  }
  return morrey_norm(spectral::frac_laplacian(f, s), mp, opts);
}

}  // namespace fks::spaces
