#include "fks/spectral/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "fks/error.hpp"

namespace fks::spectral {

namespace {

// Plans are created once per (d, n, direction) with FFTW_ESTIMATE, which keeps
// them deterministic, and executed through the new-array interface.
fftw_plan get_plan(const GridSpec& g, int sign) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, fftw_plan> plans;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(g.d, g.n, sign);
  auto it = plans.find(key);
  if (it != plans.end()) return it->second;
  const std::size_t N = g.points();
  fftw_complex* buf = fftw_alloc_complex(N);
  int dims[3] = {g.n, g.n, g.n};
  fftw_plan p = fftw_plan_dft(g.d, dims, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
  fftw_free(buf);
  if (!p) throw Error(ErrorKind::numerical, "FFTW plan creation failed");
  plans.emplace(key, p);
  return p;
}

}  // namespace

SpectralCoeffs transform(const Field& f) {
  f.validate();
  SpectralCoeffs F(f.grid, f.components);
  const std::size_t N = f.points();
  fftw_plan p = get_plan(f.grid, FFTW_FORWARD);
  const double inv = 1.0 / static_cast<double>(N);
  for (int c = 0; c < f.components; ++c) {
    cplx* out = F.component(c);
    const double* in = f.component(c);
    for (std::size_t i = 0; i < N; ++i) out[i] = cplx(in[i], 0.0);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(out), reinterpret_cast<fftw_complex*>(out));
    for (std::size_t i = 0; i < N; ++i) out[i] *= inv;
  }
  return F;
}

Field inverse_transform(const SpectralCoeffs& F) {
  F.validate();
  Field f(F.grid, F.components);
  const std::size_t N = F.points();
  fftw_plan p = get_plan(F.grid, FFTW_BACKWARD);
  std::vector<cplx> work(N);
  for (int c = 0; c < F.components; ++c) {
    std::copy(F.component(c), F.component(c) + N, work.begin());
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(work.data()), reinterpret_cast<fftw_complex*>(work.data()));
    double* out = f.component(c);
    for (std::size_t i = 0; i < N; ++i) out[i] = work[i].real();
  }
  return f;
}

double conjugate_symmetry_error(const SpectralCoeffs& F) {
  const GridSpec& g = F.grid;
  const std::size_t N = F.points();
  double worst = 0.0, scale = 0.0;
  for (int c = 0; c < F.components; ++c) {
    const cplx* a = F.component(c);
    for (std::size_t p = 0; p < N; ++p) {
      auto idx = unflatten(g, p);
      std::array<int, 3> m{0, 0, 0};
      for (int ax = 0; ax < g.d; ++ax) m[ax] = (g.n - idx[ax]) % g.n;
      const std::size_t q = flatten(g, m);
      worst = std::max(worst, std::abs(a[p] - std::conj(a[q])));
      scale = std::max(scale, std::abs(a[p]));
    }
  }
  return scale > 0.0 ? worst / scale : 0.0;
}

}  // namespace fks::spectral
