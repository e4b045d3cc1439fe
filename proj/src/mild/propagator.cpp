#include "fks/mild/propagator.hpp"

#include <cmath>
#include <sstream>

#include "fks/error.hpp"
#include "fks/specfun/mittag_leffler.hpp"
#include "fks/spectral/parallel.hpp"
#include "fks/spectral/solution_ops.hpp"

namespace fks::mild {

using spectral::cplx;

Propagator::Propagator(const SolverConfig& cfg) : cfg_(cfg) {
  cfg_.validate();
  const auto& mt = spectral::modes(cfg_.grid);
  int kmax = 0;
  for (int v : mt.k2) kmax = std::max(kmax, v);
  col_of_k2_.assign(static_cast<std::size_t>(kmax) + 1, -1);
  for (int v : mt.k2) col_of_k2_[v] = 0;
  std::vector<double> lambdas;
  for (int v = 0; v <= kmax; ++v) {
    if (col_of_k2_[v] < 0) continue;
    col_of_k2_[v] = static_cast<int>(lambdas.size());
    lambdas.push_back(std::pow(cfg_.grid.k0() * std::sqrt(static_cast<double>(v)), cfg_.params.beta));
  }
  ncols_ = lambdas.size();
  mode_col_.resize(mt.k2.size());
  for (std::size_t p = 0; p < mt.k2.size(); ++p) mode_col_[p] = static_cast<std::size_t>(col_of_k2_[mt.k2[p]]);

  const int N = cfg_.n_steps;
  const double a = cfg_.params.alpha;
  const double dt = cfg_.dt();
  S_.assign(static_cast<std::size_t>(N + 1) * ncols_, 0.0);
  W_.assign(static_cast<std::size_t>(N + 1) * ncols_, 0.0);
  spectral::parallel_for(ncols_, [&](std::size_t b, std::size_t e) {
    std::vector<double> lam(1);
    for (std::size_t c = b; c < e; ++c) {
      const double L = lambdas[c];
      S_[c] = 1.0;
      for (int n = 1; n <= N; ++n) {
        const double x = std::pow(cfg_.time(n), a) * L;
        S_[static_cast<std::size_t>(n) * ncols_ + c] = (a == 1.0) ? std::exp(-x) : specfun::mittag_leffler(a, 1.0, -x);
      }
      lam[0] = L;
      for (int m = 1; m <= N; ++m)
        W_[static_cast<std::size_t>(m) * ncols_ + c] =
            spectral::duhamel_weights((m - 1) * dt, m * dt, cfg_.params, lam)[0];
    }
  });
}

std::size_t Propagator::column(int k2) const {
  if (k2 < 0 || static_cast<std::size_t>(k2) >= col_of_k2_.size() || col_of_k2_[k2] < 0)
    throw Error(ErrorKind::out_of_range, "Propagator: |k|^2 not on the grid");
  return static_cast<std::size_t>(col_of_k2_[k2]);
}

double Propagator::s_symbol(int n, int k2) const {
  if (n < 0 || n > cfg_.n_steps) throw Error(ErrorKind::out_of_range, "Propagator: node off the mesh");
  return S_[static_cast<std::size_t>(n) * ncols_ + column(k2)];
}

double Propagator::w_symbol(int m, int k2) const {
  if (m < 1 || m > cfg_.n_steps) throw Error(ErrorKind::out_of_range, "Propagator: lag off the mesh");
  return W_[static_cast<std::size_t>(m) * ncols_ + column(k2)];
}

namespace {

void scale_into(SpectralCoeffs& out, const SpectralCoeffs& in, const double* row, const std::vector<std::size_t>& col) {
  const std::size_t N = in.points();
  for (int c = 0; c < in.components; ++c) {
    const cplx* src = in.component(c);
    cplx* dst = out.component(c);
    for (std::size_t p = 0; p < N; ++p) dst[p] = row[col[p]] * src[p];
  }
}

}  // namespace

Spectra Propagator::linear(const Spectra& init, int n) const {
  if (n < 0 || n > cfg_.n_steps) throw Error(ErrorKind::out_of_range, "Propagator: node off the mesh");
  if (init.u.grid != cfg_.grid || init.v.grid != cfg_.grid || init.w.grid != cfg_.grid)
    throw Error(ErrorKind::size_mismatch, "Propagator: initial data on a different grid");
  const double* row = S_.data() + static_cast<std::size_t>(n) * ncols_;
  Spectra out = init;
  scale_into(out.u, init.u, row, mode_col_);
  scale_into(out.v, init.v, row, mode_col_);
  scale_into(out.w, init.w, row, mode_col_);
  return out;
}

Spectra Propagator::step(const Spectra& init, const NonlinearHistory& history, int n) const {
  Spectra out = linear(init, n);
  if (history.size() < static_cast<std::size_t>(n)) {
    std::ostringstream os;
    os << "step to node " << n << " needs " << n << " history entries, have " << history.size();
    throw Error(ErrorKind::missing_history, os.str());
  }
  if (n == 0) return out;
  const std::size_t N = cfg_.grid.points();
  // Each mode sums over j in a fixed order: results do not depend on the
  // thread count.
  spectral::parallel_for(N, [&](std::size_t b, std::size_t e) {
    for (std::size_t p = b; p < e; ++p) {
      const std::size_t col = mode_col_[p];
      for (int j = 0; j < n; ++j) {
        const double wgt = W_[static_cast<std::size_t>(n - j) * ncols_ + col];
        const Spectra& Nj = history.at(static_cast<std::size_t>(j));
        for (int c = 0; c < out.u.components; ++c) out.u.component(c)[p] -= wgt * Nj.u.component(c)[p];
        out.v.coeffs[p] -= wgt * Nj.v.coeffs[p];
        out.w.coeffs[p] -= wgt * Nj.w.coeffs[p];
      }
    }
  });
  return out;
}

}  // namespace fks::mild
