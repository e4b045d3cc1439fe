#pragma once

#include <cstdint>
#include <vector>

#include "fks/spaces/besov.hpp"
#include "fks/spectral/operators.hpp"

namespace fks::spaces {

/// Band-limited mean-free field with Gaussian random coefficients on integer
/// wavevectors |k_i| <= kmax. The coefficients depend only on (d, kmax, seed,
/// components), so the same function can be sampled on finer grids.
Field random_band_limited(const GridSpec& g, int kmax, std::uint64_t seed, int components = 1);

/// count fields with seeds seed, seed+1, ...
std::vector<Field> band_limited_corpus(const GridSpec& g, int count, int kmax, std::uint64_t seed);

struct ProbeReport {
  std::vector<double> ratios;
  double max_ratio = 0.0;
  double min_ratio = 0.0;
};

enum class EmbeddingRelation {
  besov_to_besov,      ///< 𝓝̇^{s1}_{p1,λ,r} -> 𝓝̇^{s2}_{p2,λ,r}
  sobolev_to_sobolev,  ///< 𝓜^{s1}_{p1,λ} -> 𝓜^{s2}_{p2,λ}
  besov1_to_morrey,    ///< 𝓝̇^0_{p,λ,1} -> 𝓜_{p,λ}
  morrey_to_besov_inf  ///< 𝓜_{p,λ} -> 𝓝̇^0_{p,λ,∞}
};

struct EmbeddingSpec {
  EmbeddingRelation relation = EmbeddingRelation::morrey_to_besov_inf;
  double s1 = 0.0, p1 = 2.0;
  double s2 = 0.0, p2 = 2.0;
  double lambda = 0.0;
  double r = 2.0;
  /// Throws ErrorKind::constraint_violation unless s1 > s2 and
  /// s1 - (d-λ)/p1 = s2 - (d-λ)/p2 (first two relations).
  void validate(int d) const;
};

/// Ratios ‖f‖_target / ‖f‖_source over the corpus.
ProbeReport embedding_probe(const std::vector<Field>& corpus, const EmbeddingSpec& spec,
                            const MorreyOptions& opts = {});

/// ‖fg‖_{p3,λ} / (‖f‖_{p1,λ}‖g‖_{p2,λ}) with 1/p3 = 1/p1 + 1/p2, over the pairs
/// (fs[i], gs[i]).
ProbeReport holder_probe(const std::vector<Field>& fs, const std::vector<Field>& gs, double p1, double p2,
                         double lambda, const MorreyOptions& opts = {});

/// ‖σ(D)f‖_{𝓜^{s-l}_{p,λ}} / ‖f‖_{𝓜^s_{p,λ}} over the corpus.
ProbeReport multiplier_probe(const std::vector<Field>& corpus, const spectral::MultiplierSpec& sigma, double l,
                             double s, const MorreyParams& mp, const MorreyOptions& opts = {});

}  // namespace fks::spaces
