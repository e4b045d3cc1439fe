#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fks/error.hpp"
#include "fks/specfun.hpp"
#include "fks/spectral.hpp"

using namespace fks;
using namespace fks::spectral;

namespace {

constexpr double pi = std::numbers::pi;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an fks::Error");
  return ErrorKind::io;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double max_diff(const Field& a, const Field& b) { return max_abs(a - b); }

// smooth field with a handful of low modes, fixed seed
Field smooth_field(const GridSpec& g, int comps, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  Field f(g, comps);
  const double k0 = g.k0();
  for (int c = 0; c < comps; ++c) {
    for (int m = 0; m < 6; ++m) {
      std::array<double, 3> kv{0, 0, 0};
      for (int a = 0; a < g.d; ++a) kv[a] = std::round(4.0 * U(rng));
      const double amp = U(rng), ph = pi * U(rng);
      for (std::size_t p = 0; p < f.points(); ++p) {
        double arg = ph;
        for (int a = 0; a < g.d; ++a) arg += k0 * kv[a] * f.coord(p, a);
        f.component(c)[p] += amp * std::cos(arg);
      }
    }
  }
  return f;
}

Field from_fn(const GridSpec& g, const std::function<double(const double*)>& fn) {
  Field f = Field::scalar(g);
  for (std::size_t p = 0; p < f.points(); ++p) {
    double x[3] = {0, 0, 0};
    for (int a = 0; a < g.d; ++a) x[a] = f.coord(p, a);
    f.values[p] = fn(x);
  }
  return f;
}

}  // namespace

TEST_CASE("grid validation and indexing") {
  GridSpec g{2, 32, 2 * pi};
  CHECK_NOTHROW(g.validate());
  CHECK(kind_of([] { GridSpec{4, 32, 1.0}.validate(); }) == ErrorKind::domain);
  CHECK(kind_of([] { GridSpec{2, 24, 1.0}.validate(); }) == ErrorKind::domain);
  CHECK(kind_of([] { GridSpec{2, 32, 0.0}.validate(); }) == ErrorKind::domain);
  CHECK(g.wavenumber(15) == 15);
  CHECK(g.wavenumber(16) == -16);
  CHECK(g.index_of(-3) == 29);
  for (std::size_t p : {0ul, 5ul, 100ul, 1023ul}) CHECK(flatten(g, unflatten(g, p)) == p);
  CHECK(unflatten(g, 33) == std::array<int, 3>{1, 1, 0});
  Field f = Field::vector(g);
  f.values.pop_back();
  CHECK(kind_of([&] { f.validate(); }) == ErrorKind::size_mismatch);
  CHECK(kind_of([&] { Field(g, 3); }) == ErrorKind::size_mismatch);
  CHECK(kind_of([] { FracParams(0.0, 1.5); }) == ErrorKind::domain);
  CHECK(kind_of([] { FracParams(0.5, 1.0); }) == ErrorKind::domain);
  CHECK_NOTHROW(FracParams(1.0, 2.0));
  CHECK_FALSE(FracParams(1.0, 1.5).is_standing());
  CHECK(FracParams(0.5, 1.5).is_standing());
}

TEST_CASE("norms") {
  GridSpec g{2, 32, 2 * pi};
  Field one = from_fn(g, [](const double*) { return 1.0; });
  CHECK(lp_norm(one, 2.0) == doctest::Approx(2 * pi).epsilon(1e-14));
  CHECK(lp_norm(one, 1.0) == doctest::Approx(4 * pi * pi).epsilon(1e-14));
  CHECK(lp_norm(one, INFINITY) == 1.0);
  Field c = from_fn(g, [](const double* x) { return std::cos(x[0]); });
  CHECK(l2_norm(c) == doctest::Approx(std::sqrt(2.0) * pi).epsilon(1e-13));
  CHECK(std::abs(mean(c)) < 1e-15);
  Field v = Field::vector(g);
  for (std::size_t p = 0; p < v.points(); ++p) v.component(0)[p] = 3.0, v.component(1)[p] = 4.0;
  CHECK(lp_norm(v, INFINITY) == doctest::Approx(5.0));
  CHECK(kind_of([&] { (void)(one + v); }) == ErrorKind::size_mismatch);
}

TEST_CASE("transform round trip, Parseval and a single cosine") {
  for (int d : {1, 2, 3}) {
    GridSpec g{d, 16, 3.0};
    Field f = smooth_field(g, 1, 7 + d);
    auto F = transform(f);
    CHECK(max_diff(inverse_transform(F), f) < 1e-13);
    double s = 0.0;
    for (auto c : F.coeffs) s += std::norm(c);
    double phys = 0.0;
    for (double v : f.values) phys += v * v;
    CHECK(s == doctest::Approx(phys / g.points()).epsilon(1e-12));
    CHECK(conjugate_symmetry_error(F) < 1e-14);
  }
  GridSpec g{2, 32, 2 * pi};
  Field c = from_fn(g, [](const double* x) { return std::cos(3.0 * x[1]); });
  auto C = transform(c);
  const std::size_t plus = flatten(g, {0, 3, 0}), minus = flatten(g, {0, g.index_of(-3), 0});
  CHECK(std::abs(C.coeffs[plus] - cplx(0.5, 0)) < 1e-14);
  CHECK(std::abs(C.coeffs[minus] - cplx(0.5, 0)) < 1e-14);
  double rest = 0.0;
  for (std::size_t p = 0; p < C.coeffs.size(); ++p)
    if (p != plus && p != minus) rest = std::max(rest, std::abs(C.coeffs[p]));
  CHECK(rest < 1e-14);
  SpectralCoeffs bad = C;
  bad.coeffs[plus] += cplx(0.0, 1.0);
  CHECK(conjugate_symmetry_error(bad) > 0.1);
}

TEST_CASE("multipliers") {
  GridSpec g{2, 32, 2 * pi};
  Field f = smooth_field(g, 1, 3);
  auto F = transform(f);
  // identity symbol
  auto id = apply_multiplier(F, MultiplierSpec::from_scalar([](const double*, double) { return cplx(1.0); },
                                                            ZeroModePolicy::identity));
  CHECK(max_diff(inverse_transform(id), f) < 1e-14);
  // zero policy removes the mean
  auto z = inverse_transform(
      apply_multiplier(F, MultiplierSpec::from_scalar([](const double*, double) { return cplx(1.0); })));
  CHECK(std::abs(mean(z)) < 1e-15);
  CHECK(std::abs(mean(f - z) - mean(f)) < 1e-14);
  // custom value at zero
  auto cm = apply_multiplier(F, MultiplierSpec::from_scalar([](const double*, double) { return cplx(0.0); },
                                                            ZeroModePolicy::custom, 2.0));
  CHECK(std::abs(mean(inverse_transform(cm)) - 2.0 * mean(f)) < 1e-14);
  // i ξ_0 equals the derivative
  auto dx = apply_multiplier(F, MultiplierSpec::from_scalar([](const double* xi, double) { return cplx(0, xi[0]); }));
  Field dsym = inverse_transform(dx), dref = inverse_transform(derivative(F, 0));
  CHECK(max_diff(dsym, dref) < 1e-12);
  // failures carry the frequency
  auto boom = MultiplierSpec::from_scalar([](const double* xi, double) -> cplx {
    if (xi[0] > 2.5) throw std::runtime_error("no");
    return 1.0;
  });
  CHECK(kind_of([&] { apply_multiplier(F, boom); }) == ErrorKind::symbol_evaluation);
  auto nan = MultiplierSpec::from_scalar([](const double*, double n) { return cplx(n > 3 ? NAN : 1.0); });
  CHECK(kind_of([&] { apply_multiplier(F, nan); }) == ErrorKind::symbol_evaluation);
  auto mat = MultiplierSpec::from_matrix([](const double*, double, cplx* o) { o[0] = o[3] = 1.0, o[1] = o[2] = 0.0; });
  CHECK(kind_of([&] { apply_multiplier(F, mat); }) == ErrorKind::size_mismatch);
  // a matrix symbol swapping components
  Field v = smooth_field(g, 2, 4);
  auto swap = MultiplierSpec::from_matrix([](const double*, double, cplx* o) { o[0] = o[3] = 0.0, o[1] = o[2] = 1.0; },
                                          ZeroModePolicy::custom, 1.0);
  Field sv = inverse_transform(apply_multiplier(transform(v), swap));
  double m0 = mean(v, 0), m1 = mean(v, 1);
  for (std::size_t p = 0; p < v.points(); ++p) {
    CHECK(std::abs(sv.component(0)[p] - (v.component(1)[p] - m1 + m0)) < 1e-13);
  }
}

TEST_CASE("fractional Laplacian") {
  GridSpec g{2, 32, 2 * pi};
  Field c = from_fn(g, [](const double* x) { return std::cos(3.0 * x[0] + 4.0 * x[1]) + 2.0; });
  Field r = frac_laplacian(c, 0.7);
  for (std::size_t p = 0; p < c.points(); ++p) {
    double x0 = c.coord(p, 0), x1 = c.coord(p, 1);
    CHECK(std::abs(r.values[p] - std::pow(5.0, 0.7) * std::cos(3 * x0 + 4 * x1)) < 1e-12);
  }
  Field inv = frac_laplacian(c, -1.0);
  for (std::size_t p = 0; p < c.points(); p += 37)
    CHECK(std::abs(inv.values[p] - std::cos(3 * c.coord(p, 0) + 4 * c.coord(p, 1)) / 5.0) < 1e-13);
  CHECK(kind_of([&] { frac_laplacian(c, -1.0, ZeroModePolicy::identity); }) == ErrorKind::policy_violation);
  Field keep = frac_laplacian(c, 0.0, ZeroModePolicy::identity);
  CHECK(max_diff(keep, c) < 1e-13);
  // order 2 matches -Δ on resolved modes
  Field f = smooth_field(g, 1, 9);
  CHECK(max_diff(frac_laplacian(f, 2.0), -1.0 * laplacian(f)) < 1e-11);
}

TEST_CASE("gradient, divergence and advection") {
  GridSpec g{2, 32, 2 * pi};
  Field phi = from_fn(g, [](const double* x) { return std::sin(x[0]) * std::cos(2 * x[1]); });
  Field gr = gradient(phi);
  for (std::size_t p = 0; p < phi.points(); ++p) {
    double x0 = phi.coord(p, 0), x1 = phi.coord(p, 1);
    CHECK(std::abs(gr.component(0)[p] - std::cos(x0) * std::cos(2 * x1)) < 1e-12);
    CHECK(std::abs(gr.component(1)[p] + 2 * std::sin(x0) * std::sin(2 * x1)) < 1e-12);
  }
  Field dv = divergence(gr), lap = laplacian(phi);
  CHECK(max_diff(dv, lap) < 1e-12);
  CHECK(max_diff(lap, -5.0 * phi) < 1e-12);
  CHECK(kind_of([&] { divergence(phi); }) == ErrorKind::size_mismatch);
  CHECK(kind_of([&] { gradient(gr); }) == ErrorKind::size_mismatch);
  // for divergence-free U the two advection forms coincide
  Field psi = from_fn(g, [](const double* x) { return std::sin(x[0] + x[1]) + 0.5 * std::cos(2 * x[0]); });
  Field gpsi = gradient(psi), U = Field::vector(g);
  for (std::size_t p = 0; p < U.points(); ++p) U.component(0)[p] = gpsi.component(1)[p], U.component(1)[p] = -gpsi.component(0)[p];
  CHECK(max_abs(divergence(U)) < 1e-12);
  Field f = from_fn(g, [](const double* x) { return std::cos(x[0]) + std::sin(2 * x[1]); });
  CHECK(max_diff(advect(U, f), conservative_advect(U, f)) < 1e-12);
  // closed form of (U·∇)f with U = (cos y, 0), f = sin x
  Field U2 = Field::vector(g);
  for (std::size_t p = 0; p < U2.points(); ++p) U2.component(0)[p] = std::cos(U2.coord(p, 1));
  Field s = from_fn(g, [](const double* x) { return std::sin(x[0]); });
  Field a = advect(U2, s);
  for (std::size_t p = 0; p < a.points(); ++p)
    CHECK(std::abs(a.values[p] - std::cos(a.coord(p, 1)) * std::cos(a.coord(p, 0))) < 1e-12);
  // dealiasing drops the k = 20 product mode (it would alias to -12)
  Field hi = from_fn(g, [](const double* x) { return std::cos(10.0 * x[0]); });
  auto sq = dealiased_product(hi, hi);
  Field back = inverse_transform(sq);
  CHECK(std::abs(mean(back) - 0.5) < 1e-14);
  CHECK(max_abs(back) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(dealias_kept(g, {10, -10, 0}));
  CHECK_FALSE(dealias_kept(g, {11, 0, 0}));
}

TEST_CASE("Leray projection") {
  for (int d : {2, 3}) {
    GridSpec g{d, 16, 2.5};
    Field v = smooth_field(g, d, 11 + d);
    // add content at the Nyquist plane so the edge handling is exercised
    for (std::size_t p = 0; p < v.points(); ++p) v.component(0)[p] += (unflatten(g, p)[0] % 2 ? -0.3 : 0.3);
    Field P = leray_project(v);
    CHECK(max_abs(divergence(P)) < 1e-12);
    auto PF = leray_project(transform(v));
    double dmax = 0.0;
    const auto& mt = modes(g);
    for (std::size_t p = 0; p < g.points(); ++p) {
      cplx acc = 0.0;
      for (int a = 0; a < d; ++a) acc += double(mt.k[p][a] == -g.n / 2 ? 0 : mt.k[p][a]) * PF.component(a)[p];
      dmax = std::max(dmax, std::abs(acc));
    }
    CHECK(dmax < 1e-12);
    CHECK(max_diff(leray_project(P), P) < 1e-13);
    Field phi = smooth_field(g, 1, 5);
    CHECK(max_abs(leray_project(gradient(phi))) < 1e-12);
    for (int a = 0; a < d; ++a) CHECK(std::abs(mean(P, a) - mean(v, a)) < 1e-14);
  }
  GridSpec g{2, 16, 1.0};
  CHECK(kind_of([&] { leray_project(Field::scalar(g)); }) == ErrorKind::size_mismatch);
}

TEST_CASE("heat operator and kernels") {
  GridSpec g1{1, 256, 20.0};
  Field K = fractional_heat_kernel(g1, 1.0, 2.0);
  CHECK(K.values[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  // Gaussian shape away from the origin
  for (int i : {3, 10, 25})
    CHECK(K.values[i] == doctest::Approx(std::exp(-K.coord(i, 0) * K.coord(i, 0) / 4.0) / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(l2_norm(spike(g1)) == doctest::Approx(1.0 / std::sqrt(g1.spacing())));
  // semigroup law and contraction
  GridSpec g{2, 32, 2 * pi};
  Field f = smooth_field(g, 1, 21);
  for (double b : {1.3, 2.0}) {
    CHECK(max_diff(heat_op(heat_op(f, 0.2, b), 0.3, b), heat_op(f, 0.5, b)) < 1e-13);
    double prev = l2_norm(f);
    for (double t : {0.1, 0.2, 0.4, 0.8}) {
      double n = l2_norm(heat_op(f, t, b));
      CHECK(n <= prev + 1e-14);
      prev = n;
    }
  }
  CHECK(std::abs(mean(heat_op(f, 1.0, 1.5, 0.5))) < 1e-15);
  CHECK(kind_of([&] { heat_op(f, 0.0, 1.5); }) == ErrorKind::nonpositive_time);
  CHECK(kind_of([&] { heat_op(f, 1.0, 2.5); }) == ErrorKind::domain);
  // K_t(0) t^{d/β} is constant while the kernel stays well inside the box
  GridSpec g2{2, 256, 40.0};
  for (double b : {1.2, 1.6}) {
    std::vector<double> v;
    for (double t : {0.25, 1.0, 4.0}) v.push_back(fractional_heat_kernel(g2, t, b).values[0] * std::pow(t, 2.0 / b));
    CHECK(std::abs(v[0] / v[2] - 1.0) < 0.03);
    CHECK(std::abs(v[1] / v[2] - 1.0) < 0.03);
  }
}

TEST_CASE("solution operators") {
  GridSpec g{1, 64, 2 * pi};
  FracParams p(0.5, 2.0);
  Field c = from_fn(g, [](const double* x) { return std::cos(x[0]); });
  // amplitude E_{1/2,1}(-t^{1/2}) at t = 2 is e^2 erfc(sqrt 2)
  Field s = solution_op(c, 2.0, p, OperatorKind::S);
  const double amp = std::exp(2.0) * std::erfc(std::sqrt(2.0));
  CHECK(max_diff(s, amp * c) < 1e-12);
  // α = 1 is the heat semigroup
  GridSpec g2{2, 32, 2 * pi};
  Field f = smooth_field(g2, 1, 31);
  CHECK(max_diff(solution_op(f, 0.3, FracParams(1.0, 1.5), OperatorKind::S), heat_op(f, 0.3, 1.5)) < 1e-13);
  // mean: S keeps it, P scales it by 1/Γ(α)
  FracParams q(0.6, 1.4);
  CHECK(std::abs(mean(solution_op(f, 1.0, q, OperatorKind::S)) - mean(f)) < 1e-14);
  CHECK(std::abs(mean(solution_op(f, 1.0, q, OperatorKind::P)) - mean(f) / std::tgamma(0.6)) < 1e-14);
  CHECK(std::abs(mean(solution_op(f, 1.0, q, OperatorKind::S, 0.5)))< 1e-15);
  CHECK(kind_of([&] { solution_op(f, -1.0, q, OperatorKind::S); }) == ErrorKind::nonpositive_time);
  CHECK(kind_of([&] { solution_op(f, 1.0, FracParams{}, OperatorKind::S, -1.0); }) == ErrorKind::domain);
}

TEST_CASE("subordination agrees with the Mittag-Leffler route") {
  GridSpec g{2, 32, 2 * pi};
  Field f = smooth_field(g, 1, 41);
  for (double a : {0.3, 0.5, 0.8}) {
    for (double b : {1.2, 1.5, 1.9}) {
      FracParams p(a, b);
      for (auto kind : {OperatorKind::S, OperatorKind::P}) {
        Field ml = solution_op(f, 0.5, p, kind);
        Field sb = subordinate_apply(f, 0.5, p, kind);
        CHECK_MESSAGE(max_diff(ml, sb) < 1e-6 * max_abs(ml), a << " " << b);
      }
    }
  }
  for (double a : {0.3, 0.5, 0.8}) {
    CHECK(Subordinator(a, OperatorKind::S).mass() == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(Subordinator(a, OperatorKind::P).mass() == doctest::Approx(1.0 / std::tgamma(a)).epsilon(1e-9));
  }
  CHECK(Subordinator(1.0, OperatorKind::S)(0.7) == doctest::Approx(std::exp(-0.7)));
  CHECK(kind_of([] { Subordinator(0.99, OperatorKind::S); }) == ErrorKind::domain);
  SubordinationOptions strict;
  strict.rel_tol = 1e-17;
  strict.abs_tol = 0.0;
  CHECK(kind_of([&] { Subordinator(0.5, OperatorKind::S, strict)(3.0); }) == ErrorKind::quadrature_nonconvergence);
}

TEST_CASE("Duhamel weights") {
  using boost::math::quadrature::gauss_kronrod;
  const std::vector<double> lams = {0.0, 0.3, 2.0, 25.0};
  // λ = 0: (b^α - a^α)/Γ(α+1)
  FracParams p(0.6, 1.5);
  auto w = duhamel_weights(0.2, 0.7, p, lams);
  CHECK(w[0] == doctest::Approx((std::pow(0.7, 0.6) - std::pow(0.2, 0.6)) / std::tgamma(1.6)).epsilon(1e-13));
  // against Gauss-Kronrod on u = s^α
  for (double a : {0.4, 0.6, 0.9}) {
    FracParams q(a, 1.5);
    for (auto [la, lb] : {std::pair{0.0, 0.3}, std::pair{0.3, 1.1}}) {
      auto ww = duhamel_weights(la, lb, q, lams);
      for (std::size_t i = 0; i < lams.size(); ++i) {
        double lam = lams[i];
        double ref = gauss_kronrod<double, 31>::integrate(
                         [&](double u) { return specfun::mittag_leffler(a, a, -lam * u); }, std::pow(la, a),
                         std::pow(lb, a), 10, 1e-13) /
                     a;
        CHECK_MESSAGE(std::abs(ww[i] - ref) < 1e-11, a << " " << lam);
      }
    }
  }
  // α = 1 closed form, and telescoping over a partition
  auto w1 = duhamel_weights(0.5, 1.5, FracParams(1.0, 2.0), {0.0, 4.0});
  CHECK(w1[0] == doctest::Approx(1.0));
  CHECK(w1[1] == doctest::Approx((std::exp(-2.0) - std::exp(-6.0)) / 4.0).epsilon(1e-14));
  double sum = 0.0;
  for (int i = 0; i < 10; ++i) sum += duhamel_weights(0.1 * i, 0.1 * (i + 1), p, {2.0})[0];
  CHECK(sum == doctest::Approx(duhamel_weights(0.0, 1.0, p, {2.0})[0]).epsilon(1e-13));
  CHECK(kind_of([&] { duhamel_weights(0.5, 0.5, p, lams); }) == ErrorKind::domain);
  CHECK(kind_of([&] { duhamel_weights(0.0, 0.5, p, {-1.0}); }) == ErrorKind::domain);
}

TEST_CASE("snapshots") {
  GridSpec g{2, 16, 3.5};
  Field v = smooth_field(g, 2, 51);
  SnapshotMeta m{0.25, 0.5, 1.5, "u"};
  std::string bytes = encode_snapshot(v, m);
  CHECK(bytes.substr(0, 6) == "FTCF1\n");
  SnapshotMeta back;
  Field w = decode_snapshot(bytes, &back);
  CHECK(w.grid == g);
  CHECK(w.values == v.values);
  CHECK(back.time == 0.25);
  CHECK(back.field_name == "u");
  const std::string path = "test_snapshot.ftcf";
  write_snapshot(path, v, m);
  CHECK(read_snapshot(path).values == v.values);
  std::remove(path.c_str());
  CHECK(kind_of([&] { decode_snapshot(bytes.substr(0, bytes.size() - 3)); }) == ErrorKind::io);
  CHECK(kind_of([&] { decode_snapshot("XXXX" + bytes); }) == ErrorKind::io);
  CHECK(kind_of([] { read_snapshot("/nonexistent/x.ftcf"); }) == ErrorKind::io);
}

TEST_CASE("parallel_for") {
  std::vector<int> hit(5000, 0);
  set_thread_count(3);
  parallel_for(hit.size(), [&](std::size_t b, std::size_t e) {
    for (std::size_t i = b; i < e; ++i) hit[i] += 1;
  });
  CHECK(std::count(hit.begin(), hit.end(), 1) == 5000);
  CHECK_THROWS(parallel_for(5000, [](std::size_t b, std::size_t) {
    if (b > 0) throw std::runtime_error("worker");
  }));
  set_thread_count(1);
  CHECK(thread_count() == 1);
}
