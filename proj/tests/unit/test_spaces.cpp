#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "fks/error.hpp"
#include "fks/spaces.hpp"
#include "fks/spectral.hpp"

using namespace fks;
using namespace fks::spaces;
using spectral::cplx;
using spectral::FracParams;

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

Field from_fn(const GridSpec& g, const std::function<double(const double*)>& fn) {
  Field f = Field::scalar(g);
  for (std::size_t p = 0; p < f.points(); ++p) {
    double x[3] = {0, 0, 0};
    for (int a = 0; a < g.d; ++a) x[a] = f.coord(p, a);
    f.values[p] = fn(x);
  }
  return f;
}

double max_abs(const Field& f) {
  double m = 0.0;
  for (double v : f.values) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_CASE("Littlewood-Paley bank") {
  GridSpec g{2, 64, 2 * pi};
  LPBank b = lp_bank(g);
  CHECK(b.shells() >= 3);
  // partition of unity on every nonzero lattice frequency
  const auto& mt = spectral::modes(g);
  double worst = 0.0;
  int max_nonzero = 0;
  for (std::size_t p = 1; p < g.points(); ++p) {
    double sum = 0.0;
    int nz = 0;
    for (int k = b.k_min; k <= b.k_max; ++k) {
      double v = b.value(k, mt.xi_norm[p]);
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
      nz += v > 0.0;
    }
    worst = std::max(worst, std::abs(sum - 1.0));
    max_nonzero = std::max(max_nonzero, nz);
  }
  CHECK(worst < 1e-12);
  CHECK(max_nonzero <= 3);
  double s1 = 0.0;
  for (int k = b.k_min; k <= b.k_max; ++k) s1 += b.value(k, 1.0);
  CHECK(s1 == doctest::Approx(1.0).epsilon(1e-14));
  for (int k = b.k_min; k <= b.k_max; ++k) CHECK(b.value(k, 0.0) == 0.0);
  // |ξ| = 2^k: at most three consecutive shells
  for (int k = 0; k <= 4; ++k) {
    std::vector<int> on;
    for (int j = b.k_min; j <= b.k_max; ++j)
      if (b.value(j, std::ldexp(1.0, k)) > 0.0) on.push_back(j);
    CHECK(on.size() <= 3);
    CHECK(on.back() - on.front() + 1 == static_cast<int>(on.size()));
  }
  // support inside 2^k [2/3, 3]
  for (int k = b.k_min; k <= b.k_max; ++k) {
    CHECK(b.value(k, std::ldexp(2.0 / 3.0, k) * 0.999) == 0.0);
    CHECK(b.value(k, std::ldexp(3.0, k) * 1.001) == 0.0);
  }
  CHECK(kind_of([&] { lp_bank(g, 1.2); }) == ErrorKind::band_too_narrow);
}

TEST_CASE("Littlewood-Paley projections") {
  GridSpec g{2, 64, 2 * pi};
  LPBank b = lp_bank(g);
  Field one = from_fn(g, [](const double* x) { return std::cos(x[0]); });
  CHECK(max_abs(lp_project(one, b.k_max, b)) < 1e-15);
  Field f = random_band_limited(g, 12, 3);
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] += 0.7;  // a mean to drop
  Field sum = Field::scalar(g);
  for (int k = b.k_min; k <= b.k_max; ++k) {
    Field dk = lp_project(f, k, b);
    CHECK(spectral::l2_norm(dk) <= spectral::l2_norm(f));
    sum = sum + dk;
  }
  double m = spectral::mean(f);
  double err = 0.0;
  for (std::size_t i = 0; i < f.values.size(); ++i) err = std::max(err, std::abs(sum.values[i] - (f.values[i] - m)));
  CHECK(err < 1e-10);
  CHECK(kind_of([&] { lp_project(f, b.k_max + 1, b); }) == ErrorKind::out_of_range);
  CHECK(kind_of([&] { lp_project(random_band_limited(GridSpec{2, 32, 2 * pi}, 3, 1), 0, b); }) ==
        ErrorKind::size_mismatch);
}

TEST_CASE("Morrey norm") {
  GridSpec g{2, 64, 2 * pi};
  Field f = random_band_limited(g, 6, 11);
  for (double p : {1.0, 2.0, 3.5})
    CHECK(std::abs(morrey_norm(f, {p, 0.0}) / spectral::lp_norm(f, p) - 1.0) < 1e-10);
  // f ≡ 1, λ = 1: R^{-1/2} (|B_R|)^{1/2} peaks at R = π with value π
  Field one = from_fn(g, [](const double*) { return 1.0; });
  auto prof = morrey_profile(one, {2.0, 1.0});
  CHECK(prof.front().first == doctest::Approx(pi));
  CHECK(prof.front().second == doctest::Approx(pi).epsilon(0.01));
  CHECK(morrey_norm(one, {2.0, 1.0}) == prof.front().second);
  // a finer lattice counts the disk more accurately
  Field one256 = from_fn(GridSpec{2, 256, 2 * pi}, [](const double*) { return 1.0; });
  CHECK(morrey_norm(one256, {2.0, 1.0}) == doctest::Approx(pi).epsilon(2e-3));
  // refinement of centers and radii never lowers the value
  MorreyOptions coarse{8, 2, 0.0}, mid{4, 3, 0.0}, fine{1, 0, 0.0};
  Field h = random_band_limited(g, 10, 5);
  const MorreyParams mp{2.0, 1.2};
  double a = morrey_norm(h, mp, coarse), b = morrey_norm(h, mp, mid), c = morrey_norm(h, mp, fine);
  CHECK(a <= b);
  CHECK(b <= c);
  // homogeneity and triangle inequality
  CHECK(morrey_norm(-3.0 * h, mp) == doctest::Approx(3.0 * morrey_norm(h, mp)).epsilon(1e-13));
  std::mt19937 rng(4);
  for (int i = 0; i < 100; ++i) {
    Field u = random_band_limited(GridSpec{2, 32, 2 * pi}, 5, 100 + i);
    Field v = random_band_limited(GridSpec{2, 32, 2 * pi}, 5, 500 + i);
    const MorreyParams q{1.0 + 3.0 * std::uniform_real_distribution<>(0, 1)(rng), 1.5};
    CHECK(morrey_norm(u + v, q) <= morrey_norm(u, q) + morrey_norm(v, q) + 1e-12);
  }
  CHECK(kind_of([&] { morrey_norm(h, mp, MorreyOptions{4, 0, 4.0}); }) == ErrorKind::radius_too_large);
  CHECK(kind_of([&] { morrey_norm(h, {0.5, 0.0}); }) == ErrorKind::domain);
  CHECK(kind_of([&] { morrey_norm(h, {2.0, 2.0}); }) == ErrorKind::domain);
}

TEST_CASE("Morrey scaling under resampling") {
  // g(x) = f(2x) on the half-size box: ‖g‖ = 2^{-(d-λ)/p} ‖f‖
  for (int d : {2, 3}) {
    const int n = d == 2 ? 64 : 32;
    GridSpec big{d, n, 2 * pi}, small{d, n, pi};
    Field f = random_band_limited(big, 4, 21);
    Field g = f;
    g.grid = small;  // same samples, coordinates halved
    for (auto [p, lam] : {std::pair{2.0, 1.0}, std::pair{3.0, 0.5}, std::pair{1.5, 1.8}}) {
      const double want = std::pow(2.0, -(d - lam) / p);
      const double got = morrey_norm(g, {p, lam}) / morrey_norm(f, {p, lam});
      CHECK(std::abs(got / want - 1.0) < 0.02);
    }
  }
}

TEST_CASE("Sobolev-Morrey norm") {
  GridSpec g{2, 64, 2 * pi};
  Field s = from_fn(g, [](const double* x) { return std::sin(x[0]); });
  const double grad = spectral::l2_norm(spectral::gradient(s));
  CHECK(sobolev_morrey_norm(s, 1.0, {2.0, 0.0}) == doctest::Approx(grad).epsilon(1e-12));
  Field f = random_band_limited(g, 6, 8);
  CHECK(sobolev_morrey_norm(f, 0.0, {2.0, 1.0}) == morrey_norm(f, {2.0, 1.0}));
  CHECK_NOTHROW(sobolev_morrey_norm(f, -0.5, {2.0, 1.0}));
  Field shifted = f;
  for (double& v : shifted.values) v += 1.0;
  CHECK(kind_of([&] { sobolev_morrey_norm(shifted, -0.5, {2.0, 1.0}); }) == ErrorKind::domain);
}

TEST_CASE("Besov-Morrey norm") {
  GridSpec g{2, 64, 2 * pi};
  LPBank bank = lp_bank(g);
  for (int i = 0; i < 10; ++i) {
    Field f = random_band_limited(g, 14, 40 + i);
    for (double s : {-0.5, 0.0, 0.7}) {
      double sup = besov_morrey_norm(f, {s, 2.0, 1.0, INFINITY}, bank);
      double one = besov_morrey_norm(f, {s, 2.0, 1.0, 1.0}, bank);
      CHECK(sup <= one);
    }
  }
  // single mode at |ξ| = 2^j sits in shells j-1, j, j+1 with known weights
  const int j = 3;
  Field m = from_fn(g, [](const double* x) { return std::cos(8.0 * x[0]); });
  auto terms = besov_shell_terms(m, {0.5, 2.0, 0.0, 1.0}, bank);
  double expect = 0.0;
  for (int k = bank.k_min; k <= bank.k_max; ++k)
    expect += std::exp2(0.5 * k) * bank.value(k, 8.0) * spectral::l2_norm(m);
  CHECK(sequence_norm(terms, 1.0) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(terms[j - bank.k_min] > 0.0);
  // log of the single-mode norm is affine in the smoothness index
  std::vector<double> logs;
  for (double w : {-1.0, 0.0, 0.5, 2.0}) logs.push_back(std::log(besov_morrey_norm(m, {w, 2.0, 1.0, INFINITY}, bank)));
  const double slope = (logs[1] - logs[0]) / 1.0;
  CHECK(std::abs((logs[2] - logs[1]) / 0.5 - slope) < 1e-10);
  CHECK(std::abs((logs[3] - logs[2]) / 1.5 - slope) < 1e-10);
  CHECK(kind_of([&] { besov_morrey_norm(m, {0.0, 1.0, 0.0, 1.0}, bank); }) == ErrorKind::domain);
  CHECK(kind_of([&] { besov_morrey_norm(m, {0.0, 2.0, 0.0, 0.5}, bank); }) == ErrorKind::domain);
}

TEST_CASE("embedding probes are refinement stable") {
  // Refinement is stable once the smallest dyadic radius (4 cells) and the
  // stride-4 centers resolve the corpus features; kmax = 3 gets there at n = 64.
  auto corpus_on = [](int n) { return band_limited_corpus(GridSpec{2, n, 2 * pi}, 50, 3, 1000); };
  auto c32 = corpus_on(64), c64 = corpus_on(128);
  EmbeddingSpec e;
  e.relation = EmbeddingRelation::morrey_to_besov_inf;
  e.p1 = 2.0;
  e.lambda = 1.0;
  auto r32 = embedding_probe(c32, e), r64 = embedding_probe(c64, e);
  MESSAGE("M -> N0_inf sup ratio: " << r32.max_ratio << " / " << r64.max_ratio);
  CHECK(std::isfinite(r64.max_ratio));
  CHECK(std::abs(r64.max_ratio / r32.max_ratio - 1.0) < 0.10);
  e.relation = EmbeddingRelation::besov1_to_morrey;
  r32 = embedding_probe(c32, e), r64 = embedding_probe(c64, e);
  MESSAGE("N0_1 -> M sup ratio: " << r32.max_ratio << " / " << r64.max_ratio);
  CHECK(std::abs(r64.max_ratio / r32.max_ratio - 1.0) < 0.10);
  // Sobolev-Morrey: s1 - (d-λ)/p1 = s2 - (d-λ)/p2
  e.relation = EmbeddingRelation::sobolev_to_sobolev;
  e.lambda = 1.0, e.p1 = 2.0, e.s1 = 0.25, e.p2 = 4.0, e.s2 = 0.0;
  r32 = embedding_probe(c32, e), r64 = embedding_probe(c64, e);
  MESSAGE("M^s embedding sup ratio: " << r32.max_ratio << " / " << r64.max_ratio);
  CHECK(std::abs(r64.max_ratio / r32.max_ratio - 1.0) < 0.10);
  e.s2 = 0.1;
  CHECK(kind_of([&] { embedding_probe(c32, e); }) == ErrorKind::constraint_violation);
  e.s1 = 0.0, e.s2 = 0.25;
  CHECK(kind_of([&] { embedding_probe(c32, e); }) == ErrorKind::constraint_violation);
}

TEST_CASE("Hoelder and multiplier probes") {
  auto fs = band_limited_corpus(GridSpec{2, 32, 2 * pi}, 20, 4, 7000);
  auto gs = band_limited_corpus(GridSpec{2, 32, 2 * pi}, 20, 4, 8000);
  auto h = holder_probe(fs, gs, 4.0, 4.0, 1.0);
  MESSAGE("Hoelder constant range " << h.min_ratio << " .. " << h.max_ratio);
  CHECK(h.max_ratio < 5.0 * h.min_ratio);
  // σ(ξ) = |ξ| ξ_1²/|ξ|², order l = 1
  auto sigma = spectral::MultiplierSpec::from_scalar([](const double* xi, double n) { return cplx(xi[0] * xi[0] / n); });
  std::vector<double> sup;
  for (int n : {32, 64}) {
    auto corpus = band_limited_corpus(GridSpec{2, n, 2 * pi}, 20, 5, 9000);
    sup.push_back(multiplier_probe(corpus, sigma, 1.0, 0.5, {2.0, 1.0}).max_ratio);
  }
  MESSAGE("multiplier sup ratio " << sup[0] << " / " << sup[1]);
  CHECK(sup[0] <= 1.0 + 1e-12);  // |σ(ξ)| <= |ξ|
  CHECK(std::abs(sup[1] / sup[0] - 1.0) < 0.10);
}
