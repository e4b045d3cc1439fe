#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace fks::cli {

inline constexpr int schema_version = 1;

/// Named initial profile. Unused parameters keep their defaults.
///   zero
///   gaussian             amplitude·exp(-|x-c|²/(2 width²)) + offset (min-image distance)
///   vortex               ∇^⊥ of a Gaussian stream function (vector fields only)
///   single_mode          amplitude·cos(k·x 2π/L) + offset
///   random_band_limited  amplitude·(Gaussian coefficients on |k_a| <= kmax), seeded
///   snapshot             read from path
/// Vector fields other than vortex are amplitude·ℙ(profile · direction).
struct ProfileSpec {
  std::string profile = "zero";
  double amplitude = 1.0;
  double width = 0.5;
  double offset = 0.0;
  std::vector<double> center;  ///< empty = box centre
  std::vector<int> k;          ///< empty = (1, 0, ...)
  std::vector<double> direction;  ///< empty = last axis
  int kmax = 3;
  std::optional<std::uint64_t> seed;  ///< empty = the run seed
  std::string path;
  bool operator==(const ProfileSpec&) const = default;
};

struct RunConfig {
  double alpha = 0.8, beta = 1.8;
  int d = 2, n = 32;
  double box_length = 6.283185307179586;
  double T = 1.0;
  int n_steps = 20;
  double lambda = 0.0;
  std::array<double, 3> r{3, 2, 4}, q{3, 2, 4};
  ProfileSpec u, v, w, phi;
  std::optional<double> kappa;  ///< rescale (u0, v0, w0, φ) to this data norm
  std::uint64_t seed = 1;
  int picard_max = 20;
  double picard_tol = 1e-10;
  std::string stopping_rule = "l2";  ///< "l2" or "space_norm"
  bool dealias = true;
  std::string w_reaction = "consumption";  ///< or "production"
  std::string output_dir = "out";
  int snapshot_every = 0;  ///< 0 = initial and final nodes only
  // verify knobs
  int decay_n = 128;
  double decay_p = 2.0;
  double decay_theta = 0.0;
  std::vector<double> scaling_lambdas{1.0, 2.0};
  std::vector<double> contraction_kappas{0.0, 1e-3, 1e-2, 1e-1, 1.0};
  ProfileSpec perturbation;  ///< added to u0 for the asymptotics run
  std::string perturbation_field = "u";
  double asymptotics_T = 20.0;
  int asymptotics_steps = 80;
  double asymptotics_gate = 1e-2;
  bool operator==(const RunConfig&) const = default;
};

/// Throws Error(ErrorKind::config) on unknown keys, wrong types, a schema
/// version other than schema_version, or out-of-range values.
RunConfig from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunConfig& c);

RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& c);

}  // namespace fks::cli
