#include "fks/spectral/operators.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fks/error.hpp"
#include "fks/spectral/fft.hpp"
#include "fks/spectral/parallel.hpp"

namespace fks::spectral {

MultiplierSpec MultiplierSpec::from_scalar(std::function<cplx(const double*, double)> s, ZeroModePolicy p,
                                           cplx custom) {
  MultiplierSpec m;
  m.scalar = std::move(s);
  m.zero_mode = p;
  m.custom_value = custom;
  return m;
}

MultiplierSpec MultiplierSpec::from_matrix(std::function<void(const double*, double, cplx*)> mat, ZeroModePolicy p,
                                           cplx custom) {
  MultiplierSpec m;
  m.matrix = std::move(mat);
  m.zero_mode = p;
  m.custom_value = custom;
  return m;
}

namespace {

cplx zero_mode_factor(ZeroModePolicy p, cplx custom) {
  switch (p) {
    case ZeroModePolicy::zero: return 0.0;
    case ZeroModePolicy::identity: return 1.0;
    case ZeroModePolicy::custom: return custom;
  }
  return 0.0;
}

[[noreturn]] void symbol_failure(const double* xi, int d, const std::string& why) {
  std::ostringstream os;
  os << "symbol failed at xi = (";
  for (int a = 0; a < d; ++a) os << (a ? ", " : "") << xi[a];
  os << "): " << why;
  throw Error(ErrorKind::symbol_evaluation, os.str());
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Frequency vector with Nyquist components removed: the discrete gradient and
// divergence drop those, and the projector must agree with them.
void odd_xi(const ModeTable& mt, std::size_t p, double* xi) {
  const GridSpec& g = mt.grid;
  const double k0 = g.k0();
  for (int a = 0; a < g.d; ++a) xi[a] = (mt.k[p][a] == -g.n / 2) ? 0.0 : k0 * mt.k[p][a];
}

}  // namespace

SpectralCoeffs apply_multiplier(const SpectralCoeffs& F, const MultiplierSpec& m) {
  F.validate();
  const GridSpec& g = F.grid;
  const int d = g.d;
  if (static_cast<bool>(m.scalar) == static_cast<bool>(m.matrix))
    throw Error(ErrorKind::symbol_evaluation, "MultiplierSpec must hold exactly one of scalar / matrix");
  if (m.matrix && F.components != d)
    throw Error(ErrorKind::size_mismatch, "matrix symbol applied to a non-vector field");
  const ModeTable& mt = modes(g);
  const std::size_t N = F.points();
  SpectralCoeffs out(g, F.components);
  const cplx z0 = zero_mode_factor(m.zero_mode, m.custom_value);
  const double k0 = g.k0();
  parallel_for(N, [&](std::size_t b, std::size_t e) {
    double xi[3];
    cplx mat[9];
    for (std::size_t p = b; p < e; ++p) {
      if (mt.k2[p] == 0) {
        for (int c = 0; c < F.components; ++c) out.component(c)[p] = z0 * F.component(c)[p];
        continue;
      }
      for (int a = 0; a < d; ++a) xi[a] = k0 * mt.k[p][a];
      if (m.scalar) {
        cplx s;
        try {
          s = m.scalar(xi, mt.xi_norm[p]);
        } catch (const std::exception& ex) {
          symbol_failure(xi, d, ex.what());
        }
        if (!finite(s)) symbol_failure(xi, d, "non-finite value");
        for (int c = 0; c < F.components; ++c) out.component(c)[p] = s * F.component(c)[p];
      } else {
        try {
          m.matrix(xi, mt.xi_norm[p], mat);
        } catch (const std::exception& ex) {
          symbol_failure(xi, d, ex.what());
        }
        for (int i = 0; i < d * d; ++i)
          if (!finite(mat[i])) symbol_failure(xi, d, "non-finite value");
        for (int i = 0; i < d; ++i) {
          cplx acc = 0.0;
          for (int j = 0; j < d; ++j) acc += mat[i * d + j] * F.component(j)[p];
          out.component(i)[p] = acc;
        }
      }
    }
  });
  return out;
}

SpectralCoeffs frac_laplacian(const SpectralCoeffs& F, double order, ZeroModePolicy policy) {
  if (order < 0.0 && policy != ZeroModePolicy::zero) {
    std::ostringstream os;
    os << "frac_laplacian: negative order " << order << " requires the zero mean policy";
    throw Error(ErrorKind::policy_violation, os.str());
  }
  F.validate();
  const ModeTable& mt = modes(F.grid);
  SpectralCoeffs out = F;
  const cplx z0 = zero_mode_factor(policy, 0.0);
  for (std::size_t p = 0; p < F.points(); ++p) {
    const double s = (mt.k2[p] == 0) ? 0.0 : std::pow(mt.xi_norm[p], order);
    for (int c = 0; c < F.components; ++c) {
      cplx& v = out.component(c)[p];
      v = (mt.k2[p] == 0) ? z0 * v : s * v;
    }
  }
  return out;
}

Field frac_laplacian(const Field& f, double order, ZeroModePolicy policy) {
  return inverse_transform(frac_laplacian(transform(f), order, policy));
}

SpectralCoeffs derivative(const SpectralCoeffs& F, int axis) {
  const GridSpec& g = F.grid;
  if (axis < 0 || axis >= g.d) throw Error(ErrorKind::domain, "derivative: axis out of range");
  const ModeTable& mt = modes(g);
  SpectralCoeffs out = F;
  const double k0 = g.k0();
  for (std::size_t p = 0; p < F.points(); ++p) {
    const int k = mt.k[p][axis];
    const cplx m = (k == -g.n / 2) ? cplx(0.0) : cplx(0.0, k0 * k);
    for (int c = 0; c < F.components; ++c) out.component(c)[p] *= m;
  }
  return out;
}

bool dealias_kept(const GridSpec& g, const std::array<int, 3>& k) {
  for (int a = 0; a < g.d; ++a)
    if (3 * std::abs(k[a]) > g.n) return false;
  return true;
}

void dealias(SpectralCoeffs& F) {
  const ModeTable& mt = modes(F.grid);
  for (std::size_t p = 0; p < F.points(); ++p) {
    if (dealias_kept(F.grid, mt.k[p])) continue;
    for (int c = 0; c < F.components; ++c) F.component(c)[p] = 0.0;
  }
}

SpectralCoeffs gradient(const SpectralCoeffs& scalar) {
  if (scalar.components != 1) throw Error(ErrorKind::size_mismatch, "gradient: scalar input required");
  const GridSpec& g = scalar.grid;
  SpectralCoeffs out(g, g.d);
  for (int a = 0; a < g.d; ++a) {
    SpectralCoeffs da = derivative(scalar, a);
    std::copy(da.coeffs.begin(), da.coeffs.end(), out.component(a));
  }
  return out;
}

SpectralCoeffs divergence(const SpectralCoeffs& vec) {
  const GridSpec& g = vec.grid;
  if (vec.components != g.d) throw Error(ErrorKind::size_mismatch, "divergence: vector input required");
  SpectralCoeffs out(g, 1);
  const ModeTable& mt = modes(g);
  const double k0 = g.k0();
  for (std::size_t p = 0; p < vec.points(); ++p) {
    cplx acc = 0.0;
    for (int a = 0; a < g.d; ++a) {
      const int k = mt.k[p][a];
      if (k == -g.n / 2) continue;
      acc += cplx(0.0, k0 * k) * vec.component(a)[p];
    }
    out.coeffs[p] = acc;
  }
  return out;
}

Field gradient(const Field& scalar) { return inverse_transform(gradient(transform(scalar))); }
Field divergence(const Field& vec) { return inverse_transform(divergence(transform(vec))); }
Field laplacian(const Field& f) {
  SpectralCoeffs F = frac_laplacian(transform(f), 2.0);
  for (auto& v : F.coeffs) v = -v;
  return inverse_transform(F);
}

SpectralCoeffs dealiased_product(const Field& a, const Field& b) {
  if (a.grid != b.grid) throw Error(ErrorKind::size_mismatch, "product: grids differ");
  if (a.components != 1 && b.components != 1)
    throw Error(ErrorKind::size_mismatch, "product: at most one factor may be a vector");
  const int comps = std::max(a.components, b.components);
  Field prod(a.grid, comps);
  const std::size_t N = a.points();
  for (int c = 0; c < comps; ++c) {
    const double* pa = a.component(a.components == 1 ? 0 : c);
    const double* pb = b.component(b.components == 1 ? 0 : c);
    double* out = prod.component(c);
    for (std::size_t i = 0; i < N; ++i) out[i] = pa[i] * pb[i];
  }
  SpectralCoeffs P = transform(prod);
  dealias(P);
  return P;
}

Field advect(const Field& U, const Field& f) {
  const GridSpec& g = U.grid;
  if (U.components != g.d) throw Error(ErrorKind::size_mismatch, "advect: U must be a vector field");
  if (f.grid != g) throw Error(ErrorKind::size_mismatch, "advect: grids differ");
  SpectralCoeffs F = transform(f);
  SpectralCoeffs acc(g, f.components);
  for (int j = 0; j < g.d; ++j) {
    Field dj = inverse_transform(derivative(F, j));
    Field Uj(g, 1);
    std::copy(U.component(j), U.component(j) + U.points(), Uj.values.begin());
    SpectralCoeffs term = dealiased_product(Uj, dj);
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += term.coeffs[i];
  }
  return inverse_transform(acc);
}

SpectralCoeffs conservative_advect_coeffs(const Field& U, const Field& f) {
  const GridSpec& g = U.grid;
  if (U.components != g.d) throw Error(ErrorKind::size_mismatch, "conservative_advect: U must be a vector field");
  if (f.grid != g) throw Error(ErrorKind::size_mismatch, "conservative_advect: grids differ");
  SpectralCoeffs acc(g, f.components);
  for (int j = 0; j < g.d; ++j) {
    Field Uj(g, 1);
    std::copy(U.component(j), U.component(j) + U.points(), Uj.values.begin());
    SpectralCoeffs term = derivative(dealiased_product(Uj, f), j);
    for (std::size_t i = 0; i < acc.coeffs.size(); ++i) acc.coeffs[i] += term.coeffs[i];
  }
  return acc;
}

Field conservative_advect(const Field& U, const Field& f) { return inverse_transform(conservative_advect_coeffs(U, f)); }

SpectralCoeffs leray_project(const SpectralCoeffs& F) {
  const GridSpec& g = F.grid;
  if (F.components != g.d || g.d < 1) throw Error(ErrorKind::size_mismatch, "leray_project: vector input required");
  const ModeTable& mt = modes(g);
  SpectralCoeffs out = F;
  const int d = g.d;
  for (std::size_t p = 0; p < F.points(); ++p) {
    double xi[3];
    odd_xi(mt, p, xi);
    double n2 = 0.0;
    for (int a = 0; a < d; ++a) n2 += xi[a] * xi[a];
    if (n2 == 0.0) continue;
    cplx dot = 0.0;
    for (int a = 0; a < d; ++a) dot += xi[a] * F.component(a)[p];
    for (int a = 0; a < d; ++a) out.component(a)[p] = F.component(a)[p] - xi[a] * dot / n2;
  }
  return out;
}

Field leray_project(const Field& f) {
  if (f.components != f.grid.d) throw Error(ErrorKind::size_mismatch, "leray_project: vector input required");
  return inverse_transform(leray_project(transform(f)));
}

SpectralCoeffs heat_op(const SpectralCoeffs& F, double t, double beta, double theta_order) {
  if (!(t > 0.0)) {
    std::ostringstream os;
    os << "heat_op: t = " << t << " must be positive";
    throw Error(ErrorKind::nonpositive_time, os.str());
  }
  if (!(beta > 0.0 && beta <= 2.0)) throw Error(ErrorKind::domain, "heat_op: beta outside (0, 2]");
  if (!(theta_order >= 0.0)) throw Error(ErrorKind::domain, "heat_op: theta_order must be >= 0");
  const ModeTable& mt = modes(F.grid);
  SpectralCoeffs out = F;
  for (std::size_t p = 0; p < F.points(); ++p) {
    double s;
    if (mt.k2[p] == 0) {
      s = (theta_order == 0.0) ? 1.0 : 0.0;
    } else {
      const double x = mt.xi_norm[p];
      s = std::exp(-t * std::pow(x, beta));
      if (theta_order != 0.0) s *= std::pow(x, theta_order);
    }
    for (int c = 0; c < F.components; ++c) out.component(c)[p] *= s;
  }
  return out;
}

Field heat_op(const Field& f, double t, double beta, double theta_order) {
  return inverse_transform(heat_op(transform(f), t, beta, theta_order));
}

Field spike(const GridSpec& g) {
  Field s = Field::scalar(g);
  s.values[0] = 1.0 / std::pow(g.spacing(), g.d);
  return s;
}

Field fractional_heat_kernel(const GridSpec& g, double t, double beta, double theta_order) {
  Field k = heat_op(spike(g), t, beta, theta_order);
  return std::pow(2.0 * std::numbers::pi, 0.5 * g.d) * k;
}

}  // namespace fks::spectral
