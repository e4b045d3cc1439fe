#include "fks/spaces/probes.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "fks/error.hpp"
#include "fks/spectral/fft.hpp"

namespace fks::spaces {

using spectral::cplx;

Field random_band_limited(const GridSpec& g, int kmax, std::uint64_t seed, int components) {
  g.validate();
  if (kmax < 1 || 2 * kmax >= g.n) throw Error(ErrorKind::domain, "random_band_limited: need 1 <= kmax < n/2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> N01;
  spectral::SpectralCoeffs F(g, components);
  const int side = 2 * kmax + 1;
  int total = 1;
  for (int a = 0; a < g.d; ++a) total *= side;
  for (int c = 0; c < components; ++c) {
    auto* z = F.component(c);
    // walk the cube in a grid-independent order; keep one of each ±k pair
    for (int t = 0; t < total; ++t) {
      std::array<int, 3> k{0, 0, 0};
      int r = t;
      for (int a = g.d - 1; a >= 0; --a) {
        k[a] = r % side - kmax;
        r /= side;
      }
      const double re = N01(rng), im = N01(rng);
      bool positive = false;
      for (int a = 0; a < g.d; ++a) {
        if (k[a] != 0) {
          positive = k[a] > 0;
          break;
        }
      }
      if (!positive) continue;
      std::array<int, 3> ip{0, 0, 0}, im_{0, 0, 0};
      for (int a = 0; a < g.d; ++a) ip[a] = g.index_of(k[a]), im_[a] = g.index_of(-k[a]);
      const cplx v(re, im);
      z[spectral::flatten(g, ip)] = v;
      z[spectral::flatten(g, im_)] = std::conj(v);
    }
  }
  return spectral::inverse_transform(F);
}

std::vector<Field> band_limited_corpus(const GridSpec& g, int count, int kmax, std::uint64_t seed) {
  std::vector<Field> out;
  for (int i = 0; i < count; ++i) out.push_back(random_band_limited(g, kmax, seed + i));
  return out;
}

namespace {

ProbeReport finish(std::vector<double> ratios) {
  ProbeReport r;
  if (ratios.empty()) throw Error(ErrorKind::domain, "probe: empty corpus");
  r.max_ratio = 0.0;
  r.min_ratio = std::numeric_limits<double>::infinity();
  for (double v : ratios) {
    r.max_ratio = std::max(r.max_ratio, v);
    r.min_ratio = std::min(r.min_ratio, v);
  }
  r.ratios = std::move(ratios);
  return r;
}

}  // namespace

void EmbeddingSpec::validate(int d) const {
  std::ostringstream os;
  if (!(lambda >= 0.0 && lambda < d) || !(p1 > 1.0) || !(p2 > 1.0) || !(r >= 1.0)) {
    os << "embedding: need p1, p2 > 1, r >= 1, 0 <= lambda < d";
    throw Error(ErrorKind::constraint_violation, os.str());
  }
  if (relation == EmbeddingRelation::besov_to_besov || relation == EmbeddingRelation::sobolev_to_sobolev) {
    const double lhs = s1 - (d - lambda) / p1, rhs = s2 - (d - lambda) / p2;
    if (!(s1 > s2) || std::abs(lhs - rhs) > 1e-12 * (1.0 + std::abs(lhs))) {
      os << "embedding: need s1 > s2 and s1 - (d-lambda)/p1 = s2 - (d-lambda)/p2, got " << lhs << " vs " << rhs
         << " (s1 = " << s1 << ", s2 = " << s2 << ")";
      throw Error(ErrorKind::constraint_violation, os.str());
    }
  }
}

ProbeReport embedding_probe(const std::vector<Field>& corpus, const EmbeddingSpec& spec, const MorreyOptions& opts) {
  if (corpus.empty()) throw Error(ErrorKind::domain, "embedding_probe: empty corpus");
  const GridSpec& g = corpus.front().grid;
  spec.validate(g.d);
  const LPBank bank = lp_bank(g);
  std::vector<double> ratios;
  for (const Field& f : corpus) {
    double src = 0.0, dst = 0.0;
    switch (spec.relation) {
      case EmbeddingRelation::besov_to_besov:
        src = besov_morrey_norm(f, {spec.s1, spec.p1, spec.lambda, spec.r}, bank, opts);
        dst = besov_morrey_norm(f, {spec.s2, spec.p2, spec.lambda, spec.r}, bank, opts);
        break;
      case EmbeddingRelation::sobolev_to_sobolev:
        src = sobolev_morrey_norm(f, spec.s1, {spec.p1, spec.lambda}, opts);
        dst = sobolev_morrey_norm(f, spec.s2, {spec.p2, spec.lambda}, opts);
        break;
      case EmbeddingRelation::besov1_to_morrey:
        src = besov_morrey_norm(f, {0.0, spec.p1, spec.lambda, 1.0}, bank, opts);
        dst = morrey_norm(f, {spec.p1, spec.lambda}, opts);
        break;
      case EmbeddingRelation::morrey_to_besov_inf:
        src = morrey_norm(f, {spec.p1, spec.lambda}, opts);
        dst = besov_morrey_norm(f, {0.0, spec.p1, spec.lambda, INFINITY}, bank, opts);
        break;
    }
    if (!(src > 0.0)) throw Error(ErrorKind::domain, "embedding_probe: zero field in corpus");
    ratios.push_back(dst / src);
  }
  return finish(std::move(ratios));
}

ProbeReport holder_probe(const std::vector<Field>& fs, const std::vector<Field>& gs, double p1, double p2,
                         double lambda, const MorreyOptions& opts) {
  if (fs.size() != gs.size()) throw Error(ErrorKind::size_mismatch, "holder_probe: corpus sizes differ");
  const double p3 = 1.0 / (1.0 / p1 + 1.0 / p2);
  if (!(p3 >= 1.0)) throw Error(ErrorKind::constraint_violation, "holder_probe: need 1/p1 + 1/p2 <= 1");
  std::vector<double> ratios;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Field& f = fs[i];
    const Field& g = gs[i];
    if (f.grid != g.grid || f.components != 1 || g.components != 1)
      throw Error(ErrorKind::size_mismatch, "holder_probe: need scalar fields on one grid");
    Field fg = f;
    for (std::size_t j = 0; j < fg.values.size(); ++j) fg.values[j] *= g.values[j];
    const double den = morrey_norm(f, {p1, lambda}, opts) * morrey_norm(g, {p2, lambda}, opts);
    ratios.push_back(morrey_norm(fg, {p3, lambda}, opts) / den);
  }
  return finish(std::move(ratios));
}

ProbeReport multiplier_probe(const std::vector<Field>& corpus, const spectral::MultiplierSpec& sigma, double l,
                             double s, const MorreyParams& mp, const MorreyOptions& opts) {
  std::vector<double> ratios;
  for (const Field& f : corpus) {
    const Field sf = spectral::inverse_transform(spectral::apply_multiplier(spectral::transform(f), sigma));
    ratios.push_back(sobolev_morrey_norm(sf, s - l, mp, opts) / sobolev_morrey_norm(f, s, mp, opts));
  }
  return finish(std::move(ratios));
}

}  // namespace fks::spaces
