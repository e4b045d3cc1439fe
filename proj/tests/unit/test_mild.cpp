#include <cmath>
#include <functional>
#include <numbers>

#include "doctest.h"
#include "fks/error.hpp"
#include "fks/mild.hpp"
#include "fks/specfun.hpp"
#include "fks/spectral.hpp"

using namespace fks;
using namespace fks::mild;
using fks::spectral::Field;
using fks::spectral::FracParams;
using fks::spectral::GridSpec;

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

Field from_fn(const GridSpec& g, const std::function<double(const double*)>& fn) {
  Field f = Field::scalar(g);
  for (std::size_t p = 0; p < f.points(); ++p) {
    double x[3] = {0, 0, 0};
    for (int a = 0; a < g.d; ++a) x[a] = f.coord(p, a);
    f.values[p] = fn(x);
  }
  return f;
}

Field vec_from(const GridSpec& g, const std::function<double(const double*)>& f0,
               const std::function<double(const double*)>& f1) {
  Field a = from_fn(g, f0), b = from_fn(g, f1);
  Field u = Field::vector(g);
  std::copy(a.values.begin(), a.values.end(), u.component(0));
  std::copy(b.values.begin(), b.values.end(), u.component(1));
  return u;
}

// divergence-free u from ψ = cos x1 cos x2 + 0.3 sin(2x1 + x2), positive v, 2π box
SolverState smooth_data(const GridSpec& g, double amp) {
  SolverState s;
  s.u = amp * vec_from(
                  g, [](const double* x) { return -std::cos(x[0]) * std::sin(x[1]) + 0.3 * std::cos(2 * x[0] + x[1]); },
                  [](const double* x) { return std::sin(x[0]) * std::cos(x[1]) - 0.6 * std::cos(2 * x[0] + x[1]); });
  s.v = amp * from_fn(g, [](const double* x) { return 1.0 + 0.5 * std::cos(x[0]) * std::cos(x[1]); });
  s.w = amp * from_fn(g, [](const double* x) { return std::sin(x[0]) + 0.2 * std::cos(2 * x[1]); });
  return s;
}

SolverConfig base_config(const GridSpec& g, double alpha, double beta, double T, int steps) {
  SolverConfig c;
  c.params = FracParams(alpha, beta);
  c.grid = g;
  c.T = T;
  c.n_steps = steps;
  c.phi = from_fn(g, [](const double* x) { return std::cos(x[1]); });
  return c;
}

}  // namespace

TEST_CASE("nonlinear terms on a manufactured state") {
  GridSpec g{2, 32, 2 * pi};
  SolverState s;
  s.u = vec_from(g, [](const double* x) { return std::sin(x[1]); }, [](const double*) { return 0.0; });
  s.v = from_fn(g, [](const double* x) { return std::cos(x[0]); });
  s.w = from_fn(g, [](const double* x) { return std::sin(x[0]); });
  Field phi = from_fn(g, [](const double* x) { return std::cos(x[1]); });
  for (double beta : {1.5, 2.0}) {
    for (bool dealias : {true, false}) {
      const FracParams p(0.7, beta);
      auto N = nonlinear_terms(s, phi, p, WReaction::consumption, dealias);
      auto Nu = spectral::inverse_transform(N.u);
      auto Nv = spectral::inverse_transform(N.v);
      auto Nw = spectral::inverse_transform(N.w);
      Field eu = vec_from(
          g, [](const double* x) { return 0.5 * std::sin(x[0]) * std::cos(x[1]); },
          [](const double* x) { return -0.5 * std::cos(x[0]) * std::sin(x[1]); });
      Field ev = from_fn(g, [](const double* x) { return -std::sin(x[0]) * std::sin(x[1]) - std::sin(2 * x[0]); });
      Field ew = from_fn(g, [](const double* x) { return std::sin(x[1]) * std::cos(x[0]) + 0.5 * std::sin(2 * x[0]); });
      CHECK(max_diff(Nu, eu) < 1e-13);
      CHECK(max_diff(Nv, ev) < 1e-13);
      CHECK(max_diff(Nw, ew) < 1e-13);
      auto Np = spectral::inverse_transform(nonlinear_terms(s, phi, p, WReaction::production, dealias).w);
      Field ep = from_fn(g, [](const double* x) { return std::sin(x[1]) * std::cos(x[0]) - 0.5 * std::sin(2 * x[0]); });
      CHECK(max_diff(Np, ep) < 1e-13);
    }
  }
  // a constant w is annihilated by a positive order but kept at β = 2
  SolverState c = SolverState::zero(g);
  c.v = from_fn(g, [](const double* x) { return 1.0 + std::cos(x[0]); });
  c.w = from_fn(g, [](const double*) { return 2.0; });
  CHECK(max_diff(spectral::inverse_transform(nonlinear_terms(c, phi, FracParams(0.7, 2.0)).w), 2.0 * c.v) < 1e-13);
  CHECK(max_diff(spectral::inverse_transform(nonlinear_terms(c, phi, FracParams(0.7, 1.5)).w), 0.0 * c.v) < 1e-13);
  SolverState bad = s;
  bad.v.values[3] = NAN;
  CHECK(kind_of([&] { nonlinear_terms(bad, phi, FracParams(0.7, 1.5)); }) == ErrorKind::numerical);
  SolverState wrong = s;
  wrong.v = Field::vector(g);
  CHECK(kind_of([&] { nonlinear_terms(wrong, phi, FracParams(0.7, 1.5)); }) == ErrorKind::size_mismatch);
}

TEST_CASE("linear propagation: identity at t = 0, single mode, heat limit") {
  GridSpec g{2, 32, 2 * pi};
  SolverState s = smooth_data(g, 1.0);
  SolverConfig c = base_config(g, 0.6, 1.7, 1.0, 10);
  Trajectory lin = linear_trajectory(s, c);
  REQUIRE(lin.size() == 11u);
  CHECK(max_diff(lin[0].u, s.u) < 1e-15);
  CHECK(max_diff(lin[0].v, s.v) < 1e-15);
  CHECK(max_diff(lin[0].w, s.w) < 1e-15);

  // cos(x1 + x2): |ξ| = √2, amplitude E_α(-t^α 2^{β/2})
  SolverState m = SolverState::zero(g);
  m.v = from_fn(g, [](const double* x) { return std::cos(x[0] + x[1]); });
  lin = linear_trajectory(m, c);
  for (int n : {1, 5, 10}) {
    const double t = c.time(n);
    const double amp = specfun::mittag_leffler(0.6, 1.0, -std::pow(t, 0.6) * std::pow(2.0, 0.85));
    CHECK(max_diff(lin[n].v, amp * m.v) < 1e-13);
  }

  SolverConfig h = base_config(g, 1.0, 2.0, 0.5, 5);
  lin = linear_trajectory(s, h);
  for (int n = 1; n <= 5; ++n) {
    const double t = h.time(n);
    const Field ref = spectral::heat_op(s.w, t, 2.0);
    CHECK(max_diff(lin[n].w, ref) < 1e-13);
    // w0 modes: |k|² = 1 and 4
    Field hand = from_fn(g, [&](const double* x) {
      return std::exp(-t) * std::sin(x[0]) + 0.2 * std::exp(-4 * t) * std::cos(2 * x[1]);
    });
    CHECK(max_diff(lin[n].w, hand) < 1e-13);
  }
}

TEST_CASE("propagator reproduces the constant-forcing closed form") {
  // ∂^α y = -λ y - c, y(0) = y0:  y = y0 E_α(-λ t^α) - c t^α E_{α,α+1}(-λ t^α)
  GridSpec g{1, 16, 2 * pi};
  for (double alpha : {0.4, 0.75, 1.0}) {
    SolverConfig c;
    c.params = FracParams(alpha, 1.5);
    c.grid = g;
    c.T = 2.0;
    c.n_steps = 16;
    Propagator prop(c);
    SolverState s0 = SolverState::zero(g);
    s0.v = from_fn(g, [](const double* x) { return 0.3 + std::cos(2 * x[0]); });
    Spectra init = to_spectra(s0);
    NonlinearSpectra forcing{SpectralCoeffs(g, 1), SpectralCoeffs(g, 1), SpectralCoeffs(g, 1)};
    const double cf = 0.7;
    forcing.v.coeffs[0] = cf;                       // constant mode
    forcing.v.coeffs[2] = forcing.v.coeffs[14] = 0.5 * cf;  // cos 2x
    NonlinearHistory hist;
    for (int n = 0; n <= c.n_steps; ++n) {
      Spectra y = prop.step(init, hist, n);
      const double t = c.time(n);
      const double lam = std::pow(2.0, 1.5);
      auto E = [&](double b, double z) { return alpha == 1.0 && b == 1.0 ? std::exp(z) : specfun::mittag_leffler(alpha, b, z); };
      const double ta = std::pow(t, alpha);
      const double y0 = 0.3 - cf * ta * specfun::rgamma(alpha + 1.0);
      const double y2 = 0.5 * (E(1.0, -lam * ta) - cf * ta * E(alpha + 1.0, -lam * ta));
      CHECK(std::abs(y.v.coeffs[0].real() - y0) < 1e-12);
      CHECK(std::abs(y.v.coeffs[2].real() - y2) < 1e-12);
      CHECK(std::abs(y.v.coeffs[14].real() - y2) < 1e-12);
      hist.push(forcing);
    }
    NonlinearHistory short_hist;
    CHECK(kind_of([&] { prop.step(init, short_hist, 3); }) == ErrorKind::missing_history);
    CHECK(kind_of([&] { prop.linear(init, c.n_steps + 1); }) == ErrorKind::out_of_range);
    CHECK(kind_of([&] { (void)prop.s_symbol(1, 3); }) == ErrorKind::out_of_range);  // |k|² = 3 not on a 1-D grid
  }
}

TEST_CASE("first step matches an independent exponential Euler step") {
  GridSpec g{2, 32, 2 * pi};
  SolverState s = smooth_data(g, 0.5);
  SolverConfig c = base_config(g, 1.0, 1.6, 0.1, 4);
  Trajectory tr = march(s, c);
  // û_1 = e^{-λΔt} û_0 - (1 - e^{-λΔt})/λ N̂_0, λ = |ξ|^β
  auto N0 = nonlinear_terms(s, c.phi, c.params);
  auto U0 = spectral::transform(s.u), V0 = spectral::transform(s.v), W0 = spectral::transform(s.w);
  const auto& mt = spectral::modes(g);
  const double dt = c.dt();
  auto etd = [&](SpectralCoeffs y, const SpectralCoeffs& nl) {
    for (int comp = 0; comp < y.components; ++comp) {
      for (std::size_t p = 0; p < y.points(); ++p) {
        const double lam = std::pow(mt.xi_norm[p], 1.6);
        const double phi1 = lam == 0.0 ? dt : -std::expm1(-lam * dt) / lam;
        y.component(comp)[p] = std::exp(-lam * dt) * y.component(comp)[p] - phi1 * nl.component(comp)[p];
      }
    }
    return spectral::inverse_transform(y);
  };
  CHECK(max_diff(tr[1].u, etd(U0, N0.u)) < 1e-12);
  CHECK(max_diff(tr[1].v, etd(V0, N0.v)) < 1e-12);
  CHECK(max_diff(tr[1].w, etd(W0, N0.w)) < 1e-12);
}

TEST_CASE("picard: linear runs, zero data, small data, divergence-free velocity") {
  GridSpec g{2, 32, 2 * pi};
  SolverConfig c = base_config(g, 0.7, 1.8, 0.5, 16);

  SolverConfig lin = c;
  lin.nonlinear = false;
  SolverState s = smooth_data(g, 1.0);
  SolveResult r = picard_solve(s, lin);
  CHECK(r.converged);
  CHECK(r.iterations.size() == 1u);
  Trajectory ref = linear_trajectory(s, lin);
  for (std::size_t n = 0; n < ref.size(); ++n) CHECK(max_diff(r.trajectory[n].v, ref[n].v) == 0.0);

  r = picard_solve(SolverState::zero(g), c);
  CHECK(r.converged);
  CHECK(r.iterations.size() == 1u);
  CHECK(r.iterations[0].delta == 0.0);

  c.picard_tol = 1e-12;
  r = picard_solve(smooth_data(g, 1e-3), c);
  REQUIRE(r.converged);
  CHECK(r.iterations.size() >= 3u);
  for (std::size_t k = 1; k < r.iterations.size(); ++k) {
    INFO("iteration " << r.iterations[k].iter << " ratio " << r.iterations[k].ratio);
    CHECK(r.iterations[k].ratio < 0.5);
  }
  Trajectory m = march(smooth_data(g, 1e-3), c);
  for (std::size_t n = 0; n < m.size(); ++n) {
    CHECK(max_diff(r.trajectory[n].u, m[n].u) < 1e-12 * 1e-3);
    CHECK(max_diff(r.trajectory[n].v, m[n].v) < 1e-12 * 1e-3);
  }

  c.picard_tol = 1e-10;
  r = picard_solve(smooth_data(g, 0.5), c);
  CHECK(r.converged);
  for (const auto& st : r.trajectory) CHECK(diagnose(st, c).div_u < 1e-10);
}

TEST_CASE("picard on large data reports instead of crashing") {
  GridSpec g{2, 32, 2 * pi};
  SolverConfig c = base_config(g, 0.7, 1.8, 1.0, 16);
  c.picard_max = 30;
  SolveResult r;
  CHECK_NOTHROW(r = picard_solve(smooth_data(g, 1e3), c));
  CHECK_FALSE(r.converged);
  CHECK_FALSE(r.message.empty());
  CHECK_FALSE(r.iterations.empty());
}

TEST_CASE("custom trajectory norm drives the stopping rule") {
  GridSpec g{2, 32, 2 * pi};
  SolverConfig c = base_config(g, 0.7, 1.8, 0.5, 8);
  int calls = 0;
  PicardOptions o;
  o.norm = [&](const Trajectory& t) {
    ++calls;
    double m = 0.0;
    for (const auto& s : t) m = std::max(m, max_abs(s.v));
    return m;
  };
  SolveResult r = picard_solve(smooth_data(g, 1e-2), c, o);
  CHECK(r.converged);
  CHECK(calls == 2 * static_cast<int>(r.iterations.size()));
}

TEST_CASE("thread count does not change results") {
  GridSpec g{2, 32, 2 * pi};
  SolverConfig c = base_config(g, 0.7, 1.8, 0.5, 8);
  const int before = spectral::thread_count();
  spectral::set_thread_count(1);
  Trajectory a = march(smooth_data(g, 0.3), c);
  spectral::set_thread_count(3);
  Trajectory b = march(smooth_data(g, 0.3), c);
  spectral::set_thread_count(before);
  for (std::size_t n = 0; n < a.size(); ++n) {
    CHECK(a[n].u.values == b[n].u.values);
    CHECK(a[n].w.values == b[n].w.values);
  }
}

TEST_CASE("scaling family") {
  GridSpec g{2, 32, 2 * pi};
  SolverConfig c = base_config(g, 0.8, 1.8, 0.5, 10);
  SolverState s = smooth_data(g, 0.2);
  auto reps = scaling_family_check(c, s, {1.0, 2.0, 0.5});
  REQUIRE(reps.size() == 3u);
  CHECK(reps[0].discrepancy == 0.0);
  for (const auto& r : reps) {
    INFO("lambda " << r.lambda << " discrepancy " << r.discrepancy);
    CHECK(r.converged);
    CHECK(r.discrepancy < 1e-10);
  }
  SolverConfig lin = c;
  lin.nonlinear = false;
  for (const auto& r : scaling_family_check(lin, s, {3.0})) CHECK(r.discrepancy < 1e-8);

  ScaledProblem sp = scaled_problem(c, s, 2.0);
  CHECK(sp.config.grid.box_length == doctest::Approx(pi));
  CHECK(sp.config.T == doctest::Approx(0.5 / std::pow(2.0, 1.8 / 0.8)));
  Trajectory a = linear_trajectory(s, c);
  SolverConfig off = sp.config;
  off.T *= 1.01;
  CHECK(kind_of([&] { scaling_discrepancy(a, c, a, off, 2.0); }) == ErrorKind::mismatched_config);
  off = sp.config;
  off.grid.n = 64;
  CHECK(kind_of([&] { scaling_discrepancy(a, c, a, off, 2.0); }) == ErrorKind::mismatched_config);
  CHECK(kind_of([&] { scaled_problem(c, s, -1.0); }) == ErrorKind::domain);
}

TEST_CASE("caputo residual shrinks at the L1 rate") {
  GridSpec g{1, 16, 2 * pi};
  for (double alpha : {0.5, 0.8}) {
    // linear single mode: exact solution is smooth on the interior window
    SolverState s = SolverState::zero(g);
    s.v = from_fn(g, [](const double* x) { return std::cos(x[0]); });
    double prev = 0.0;
    std::vector<double> orders;
    for (int N : {20, 40, 80}) {
      SolverConfig c;
      c.params = FracParams(alpha, 1.5);
      c.grid = g;
      c.T = 1.0;
      c.n_steps = N;
      c.nonlinear = false;
      Trajectory tr = linear_trajectory(s, c);
      CaputoResidual res = caputo_residual(tr, c);
      const double r = res.max_v;
      if (prev > 0.0) orders.push_back(std::log2(prev / r));
      prev = r;
    }
    for (double o : orders) {
      INFO("alpha " << alpha << " order " << o);
      CHECK(std::abs(o - (2.0 - alpha)) < 0.3);
    }
  }
}

TEST_CASE("caputo residual of a nonlinear solve decreases under refinement") {
  GridSpec g{2, 32, 2 * pi};
  double prev = 0.0;
  for (int N : {16, 32, 64}) {
    SolverConfig c = base_config(g, 0.7, 1.8, 0.5, N);
    Trajectory tr = march(smooth_data(g, 0.2), c);
    const double r = caputo_residual(tr, c).max();
    INFO("N " << N << " residual " << r);
    if (prev > 0.0) CHECK(r < 0.75 * prev);
    prev = r;
  }
}

TEST_CASE("diagnostics csv and validation") {
  GridSpec g{2, 32, 2 * pi};
  SolverConfig c = base_config(g, 0.7, 1.8, 0.5, 8);
  SolveResult r = picard_solve(smooth_data(g, 0.1), c);
  const std::string csv = diagnostics_csv(r, c);
  CHECK(csv.rfind("iter,t_index,t,picard_ratio,div_u,norm_u,norm_v,norm_w,residual_u,residual_v,residual_w\n", 0) == 0);
  int lines = 0;
  for (char ch : csv) lines += ch == '\n';
  CHECK(lines == 1 + c.n_steps + 1);
  CHECK(csv.find("\n" + std::to_string(r.iterations.size()) + ",0,0,") != std::string::npos);

  SolverConfig bad = c;
  bad.n_steps = 0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::domain);
  bad = c;
  bad.T = -1.0;
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::domain);
  bad = c;
  bad.phi = Field::scalar(GridSpec{2, 16, 2 * pi});
  CHECK(kind_of([&] { bad.validate(); }) == ErrorKind::size_mismatch);
  SolverState s = smooth_data(GridSpec{2, 16, 2 * pi}, 1.0);
  CHECK(kind_of([&] { picard_solve(s, c); }) == ErrorKind::size_mismatch);
}
