#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

namespace fks::spectral {

using cplx = std::complex<double>;

/// Periodic lattice [0, L)^d with n points per axis.
struct GridSpec {
  int d = 2;
  int n = 64;
  double box_length = 6.283185307179586;

  /// Throws ErrorKind::domain unless d in {1,2,3}, n a power of two >= 16, L > 0.
  void validate() const;
  std::size_t points() const;
  double spacing() const { return box_length / n; }
  /// 2π/L, the frequency of wavenumber 1.
  double k0() const;
  /// Signed wavenumber of index i along an axis (i < n/2 -> i, else i - n).
  int wavenumber(int i) const { return i < n / 2 ? i : i - n; }
  /// Index along an axis of signed wavenumber k.
  int index_of(int k) const { return k >= 0 ? k : k + n; }

  bool operator==(const GridSpec& o) const { return d == o.d && n == o.n && box_length == o.box_length; }
  bool operator!=(const GridSpec& o) const { return !(*this == o); }
};

/// Lattice indices of a flat row-major position (axis 0 slowest).
std::array<int, 3> unflatten(const GridSpec& g, std::size_t flat);
std::size_t flatten(const GridSpec& g, const std::array<int, 3>& idx);

/// Real samples of a scalar (components = 1) or vector (components = d) field,
/// stored component-major, each component row-major over the lattice.
struct Field {
  GridSpec grid;
  int components = 1;
  std::vector<double> values;

  Field() = default;
  Field(const GridSpec& g, int comps);
  static Field scalar(const GridSpec& g) { return Field(g, 1); }
  static Field vector(const GridSpec& g) { return Field(g, g.d); }

  std::size_t points() const { return grid.points(); }
  double* component(int c) { return values.data() + static_cast<std::size_t>(c) * points(); }
  const double* component(int c) const { return values.data() + static_cast<std::size_t>(c) * points(); }
  /// Coordinate x_i = i L / n of axis a at flat position p.
  double coord(std::size_t p, int axis) const;
  /// Throws ErrorKind::size_mismatch if values.size() != components * n^d.
  void validate() const;
};

/// Fourier coefficients F_k = (1/N) Σ_j f_j e^{-i ξ_k · x_j}, laid out like Field.
struct SpectralCoeffs {
  GridSpec grid;
  int components = 1;
  std::vector<cplx> coeffs;

  SpectralCoeffs() = default;
  SpectralCoeffs(const GridSpec& g, int comps);
  std::size_t points() const { return grid.points(); }
  cplx* component(int c) { return coeffs.data() + static_cast<std::size_t>(c) * points(); }
  const cplx* component(int c) const { return coeffs.data() + static_cast<std::size_t>(c) * points(); }
  void validate() const;
};

/// Frequency data of every lattice mode: integer wavevector and |ξ|.
struct ModeTable {
  GridSpec grid;
  std::vector<std::array<int, 3>> k;  ///< unused axes are 0
  std::vector<double> xi_norm;        ///< (2π/L)|k|
  std::vector<int> k2;                ///< |k|^2, integer
  std::vector<bool> nyquist;          ///< some axis sits at k = -n/2
};

/// Shared, lazily built table for a grid (construction is mutex guarded).
const ModeTable& modes(const GridSpec& g);

/// The fractional orders (α, β).
struct FracParams {
  double alpha = 0.5;
  double beta = 1.5;

  FracParams() = default;
  /// Accepts α in (0, 1] and β in (1, 2]; the endpoints are the classical
  /// reductions. Throws ErrorKind::domain otherwise.
  FracParams(double a, double b);
  void validate() const;
  /// Strict standing assumption 0 < α < 1, 1 < β < 2.
  bool is_standing() const { return alpha < 1.0 && beta < 2.0; }
};

/// Discrete L^p norm (h^d Σ |f|^p)^{1/p}; vector fields use the pointwise
/// Euclidean length. p = inf gives the max norm.
double lp_norm(const Field& f, double p);
double l2_norm(const Field& f);
/// Mean over the lattice of one component.
double mean(const Field& f, int component = 0);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator*(double s, const Field& a);

}  // namespace fks::spectral
