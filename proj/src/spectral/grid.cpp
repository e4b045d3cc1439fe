#include "fks/spectral/grid.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>
#include <tuple>

#include "fks/error.hpp"

namespace fks::spectral {

void GridSpec::validate() const {
  std::ostringstream os;
  if (d < 1 || d > 3) {
    os << "GridSpec: d = " << d << " not in {1, 2, 3}";
    throw Error(ErrorKind::domain, os.str());
  }
  if (n < 16 || (n & (n - 1)) != 0) {
    os << "GridSpec: n = " << n << " must be a power of two >= 16";
    throw Error(ErrorKind::domain, os.str());
  }
  if (!(box_length > 0.0) || !std::isfinite(box_length)) {
    os << "GridSpec: box_length = " << box_length << " must be positive";
    throw Error(ErrorKind::domain, os.str());
  }
  if (d == 3 && n > 512) throw Error(ErrorKind::domain, "GridSpec: n^3 too large");
}

std::size_t GridSpec::points() const {
  std::size_t p = 1;
  for (int i = 0; i < d; ++i) p *= static_cast<std::size_t>(n);
  return p;
}

double GridSpec::k0() const { return 2.0 * std::numbers::pi / box_length; }

std::array<int, 3> unflatten(const GridSpec& g, std::size_t flat) {
  std::array<int, 3> idx{0, 0, 0};
  for (int a = g.d - 1; a >= 0; --a) {
    idx[a] = static_cast<int>(flat % g.n);
    flat /= g.n;
  }
  return idx;
}

std::size_t flatten(const GridSpec& g, const std::array<int, 3>& idx) {
  std::size_t f = 0;
  for (int a = 0; a < g.d; ++a) f = f * g.n + static_cast<std::size_t>(idx[a]);
  return f;
}

Field::Field(const GridSpec& g, int comps) : grid(g), components(comps) {
  g.validate();
  if (comps != 1 && comps != g.d) throw Error(ErrorKind::size_mismatch, "Field: components must be 1 or d");
  values.assign(static_cast<std::size_t>(comps) * g.points(), 0.0);
}

double Field::coord(std::size_t p, int axis) const { return unflatten(grid, p)[axis] * grid.spacing(); }

void Field::validate() const {
  grid.validate();
  if (components != 1 && components != grid.d)
    throw Error(ErrorKind::size_mismatch, "Field: components must be 1 or d");
  if (values.size() != static_cast<std::size_t>(components) * grid.points())
    throw Error(ErrorKind::size_mismatch, "Field: sample count differs from components * n^d");
}

SpectralCoeffs::SpectralCoeffs(const GridSpec& g, int comps) : grid(g), components(comps) {
  g.validate();
  if (comps != 1 && comps != g.d) throw Error(ErrorKind::size_mismatch, "SpectralCoeffs: components must be 1 or d");
  coeffs.assign(static_cast<std::size_t>(comps) * g.points(), cplx(0.0, 0.0));
}

void SpectralCoeffs::validate() const {
  grid.validate();
  if (components != 1 && components != grid.d)
    throw Error(ErrorKind::size_mismatch, "SpectralCoeffs: components must be 1 or d");
  if (coeffs.size() != static_cast<std::size_t>(components) * grid.points())
    throw Error(ErrorKind::size_mismatch, "SpectralCoeffs: coefficient count differs from components * n^d");
}

const ModeTable& modes(const GridSpec& g) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, double>, std::unique_ptr<ModeTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(g.d, g.n, g.box_length);
  auto it = cache.find(key);
  if (it != cache.end()) return *it->second;
  g.validate();
  auto t = std::make_unique<ModeTable>();
  t->grid = g;
  const std::size_t N = g.points();
  t->k.resize(N);
  t->xi_norm.resize(N);
  t->k2.resize(N);
  t->nyquist.resize(N);
  const double k0 = g.k0();
  for (std::size_t p = 0; p < N; ++p) {
    auto idx = unflatten(g, p);
    std::array<int, 3> k{0, 0, 0};
    int k2 = 0;
    bool nyq = false;
    for (int a = 0; a < g.d; ++a) {
      k[a] = g.wavenumber(idx[a]);
      k2 += k[a] * k[a];
      nyq = nyq || (k[a] == -g.n / 2);
    }
    t->k[p] = k;
    t->k2[p] = k2;
    t->xi_norm[p] = k0 * std::sqrt(static_cast<double>(k2));
    t->nyquist[p] = nyq;
  }
  auto& ref = *t;
  cache.emplace(key, std::move(t));
  return ref;
}

FracParams::FracParams(double a, double b) : alpha(a), beta(b) { validate(); }

void FracParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0) || !(beta > 1.0 && beta <= 2.0)) {
    std::ostringstream os;
    os << "FracParams: need 0 < alpha <= 1 and 1 < beta <= 2, got (" << alpha << ", " << beta << ")";
    throw Error(ErrorKind::domain, os.str());
  }
}

double lp_norm(const Field& f, double p) {
  const std::size_t N = f.points();
  const double cell = std::pow(f.grid.spacing(), f.grid.d);
  double acc = 0.0;
  for (std::size_t i = 0; i < N; ++i) {
    double m2 = 0.0;
    for (int c = 0; c < f.components; ++c) m2 += f.component(c)[i] * f.component(c)[i];
    const double m = std::sqrt(m2);
    if (std::isinf(p))
      acc = std::max(acc, m);
    else
      acc += std::pow(m, p);
  }
  if (std::isinf(p)) return acc;
  return std::pow(cell * acc, 1.0 / p);
}

double l2_norm(const Field& f) {
  const double cell = std::pow(f.grid.spacing(), f.grid.d);
  double acc = 0.0;
  for (double v : f.values) acc += v * v;
  return std::sqrt(cell * acc);
}

double mean(const Field& f, int component) {
  const double* p = f.component(component);
  double acc = 0.0;
  for (std::size_t i = 0; i < f.points(); ++i) acc += p[i];
  return acc / static_cast<double>(f.points());
}

namespace {
void check_same(const Field& a, const Field& b) {
  if (a.grid != b.grid || a.components != b.components)
    throw Error(ErrorKind::size_mismatch, "Field arithmetic: shapes differ");
}
}  // namespace

Field operator+(const Field& a, const Field& b) {
  check_same(a, b);
  Field r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] += b.values[i];
  return r;
}

Field operator-(const Field& a, const Field& b) {
  check_same(a, b);
  Field r = a;
  for (std::size_t i = 0; i < r.values.size(); ++i) r.values[i] -= b.values[i];
  return r;
}

Field operator*(double s, const Field& a) {
  Field r = a;
  for (double& v : r.values) v *= s;
  return r;
}

}  // namespace fks::spectral
