#include "fks/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fks/error.hpp"

namespace fks::cli {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::config, what); }

// Rejects keys outside `allowed` so typos do not pass silently.
void only_keys(const json& j, const std::string& where, const std::set<std::string>& allowed) {
  if (!j.is_object()) bad(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) bad(where + ": unknown key '" + it.key() + "'");
}

template <class T>
void get(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    bad(where + "." + key + ": wrong type");
  }
}

const std::set<std::string> profile_names = {"zero", "gaussian", "vortex", "single_mode", "random_band_limited",
                                             "snapshot"};

ProfileSpec profile_from(const json& j, const std::string& where) {
  only_keys(j, where,
            {"profile", "amplitude", "width", "offset", "center", "k", "direction", "kmax", "seed", "path"});
  ProfileSpec p;
  get(j, "profile", p.profile, where);
  get(j, "amplitude", p.amplitude, where);
  get(j, "width", p.width, where);
  get(j, "offset", p.offset, where);
  get(j, "center", p.center, where);
  get(j, "k", p.k, where);
  get(j, "direction", p.direction, where);
  get(j, "kmax", p.kmax, where);
  if (j.contains("seed") && !j.at("seed").is_null()) {
    std::uint64_t s = 0;
    get(j, "seed", s, where);
    p.seed = s;
  }
  get(j, "path", p.path, where);
  if (!profile_names.count(p.profile)) bad(where + ".profile: unknown profile '" + p.profile + "'");
  if (!(p.width > 0.0)) bad(where + ".width must be > 0");
  if (p.kmax < 1) bad(where + ".kmax must be >= 1");
  if (p.profile == "snapshot" && p.path.empty()) bad(where + ": snapshot profile needs a path");
  return p;
}

json profile_to(const ProfileSpec& p) {
  json j = {{"profile", p.profile}, {"amplitude", p.amplitude}, {"width", p.width},   {"offset", p.offset},
            {"center", p.center},   {"k", p.k},                 {"direction", p.direction}, {"kmax", p.kmax},
            {"path", p.path}};
  j["seed"] = p.seed ? json(*p.seed) : json(nullptr);
  return j;
}

void validate(const RunConfig& c) {
  std::ostringstream os;
  if (!(c.alpha > 0.0 && c.alpha <= 1.0)) bad("fractional.alpha must lie in (0, 1]");
  if (!(c.beta > 1.0 && c.beta <= 2.0)) bad("fractional.beta must lie in (1, 2]");
  if (c.d < 1 || c.d > 3) bad("grid.d must be 1, 2 or 3");
  if (c.n < 16 || (c.n & (c.n - 1)) != 0) bad("grid.n must be a power of two >= 16");
  if (!(c.box_length > 0.0)) bad("grid.box_length must be > 0");
  if (!(c.T > 0.0)) bad("time.T must be > 0");
  if (c.n_steps < 1) bad("time.n_steps must be >= 1");
  if (c.picard_max < 1) bad("picard.max must be >= 1");
  if (!(c.picard_tol > 0.0)) bad("picard.tol must be > 0");
  if (c.stopping_rule != "l2" && c.stopping_rule != "space_norm")
    bad("picard.stopping_rule must be 'l2' or 'space_norm'");
  if (c.w_reaction != "consumption" && c.w_reaction != "production")
    bad("solver.w_reaction must be 'consumption' or 'production'");
  if (c.snapshot_every < 0) bad("output.snapshot_every must be >= 0");
  if (c.kappa && !(*c.kappa >= 0.0)) bad("initial.kappa must be >= 0");
  if (c.decay_n < 16 || (c.decay_n & (c.decay_n - 1)) != 0) bad("verify.decay.n must be a power of two >= 16");
  if (!(c.decay_p >= 1.0)) bad("verify.decay.p must be >= 1");
  if (c.perturbation_field != "u" && c.perturbation_field != "v" && c.perturbation_field != "w")
    bad("verify.asymptotics.field must be u, v or w");
  if (!(c.asymptotics_T > 0.0) || c.asymptotics_steps < 2) bad("verify.asymptotics: need T > 0 and n_steps >= 2");
  for (const ProfileSpec* p : {&c.u, &c.v, &c.w, &c.phi, &c.perturbation}) {
    if (!p->center.empty() && static_cast<int>(p->center.size()) != c.d) bad("profile center must have d entries");
    if (!p->k.empty() && static_cast<int>(p->k.size()) != c.d) bad("profile k must have d entries");
    if (!p->direction.empty() && static_cast<int>(p->direction.size()) != c.d)
      bad("profile direction must have d entries");
  }
  if (c.u.profile == "vortex" && c.d < 2) bad("initial.u: vortex needs d >= 2");
  for (const ProfileSpec* p : {&c.v, &c.w, &c.phi})
    if (p->profile == "vortex") bad("vortex is a velocity profile");
}

}  // namespace

RunConfig from_json(const json& j) {
  only_keys(j, "config",
            {"schema_version", "fractional", "grid", "time", "exponents", "initial", "picard", "solver", "output",
             "verify"});
  if (!j.contains("schema_version")) bad("config: missing schema_version");
  int ver = 0;
  get(j, "schema_version", ver, "config");
  if (ver != schema_version) bad("config: schema_version " + std::to_string(ver) + " is not supported");
  RunConfig c;
  if (j.contains("fractional")) {
    const json& s = j.at("fractional");
    only_keys(s, "fractional", {"alpha", "beta"});
    get(s, "alpha", c.alpha, "fractional");
    get(s, "beta", c.beta, "fractional");
  }
  if (j.contains("grid")) {
    const json& s = j.at("grid");
    only_keys(s, "grid", {"d", "n", "box_length"});
    get(s, "d", c.d, "grid");
    get(s, "n", c.n, "grid");
    get(s, "box_length", c.box_length, "grid");
  }
  if (j.contains("time")) {
    const json& s = j.at("time");
    only_keys(s, "time", {"T", "n_steps"});
    get(s, "T", c.T, "time");
    get(s, "n_steps", c.n_steps, "time");
  }
  if (j.contains("exponents")) {
    const json& s = j.at("exponents");
    only_keys(s, "exponents", {"lambda", "r", "q"});
    get(s, "lambda", c.lambda, "exponents");
    get(s, "r", c.r, "exponents");
    get(s, "q", c.q, "exponents");
  }
  if (j.contains("initial")) {
    const json& s = j.at("initial");
    only_keys(s, "initial", {"u", "v", "w", "phi", "kappa", "seed"});
    if (s.contains("u")) c.u = profile_from(s.at("u"), "initial.u");
    if (s.contains("v")) c.v = profile_from(s.at("v"), "initial.v");
    if (s.contains("w")) c.w = profile_from(s.at("w"), "initial.w");
    if (s.contains("phi")) c.phi = profile_from(s.at("phi"), "initial.phi");
    if (s.contains("kappa") && !s.at("kappa").is_null()) {
      double k = 0;
      get(s, "kappa", k, "initial");
      c.kappa = k;
    }
    get(s, "seed", c.seed, "initial");
  }
  if (j.contains("picard")) {
    const json& s = j.at("picard");
    only_keys(s, "picard", {"max", "tol", "stopping_rule"});
    get(s, "max", c.picard_max, "picard");
    get(s, "tol", c.picard_tol, "picard");
    get(s, "stopping_rule", c.stopping_rule, "picard");
  }
  if (j.contains("solver")) {
    const json& s = j.at("solver");
    only_keys(s, "solver", {"dealias", "w_reaction"});
    get(s, "dealias", c.dealias, "solver");
    get(s, "w_reaction", c.w_reaction, "solver");
  }
  if (j.contains("output")) {
    const json& s = j.at("output");
    only_keys(s, "output", {"directory", "snapshot_every"});
    get(s, "directory", c.output_dir, "output");
    get(s, "snapshot_every", c.snapshot_every, "output");
  }
  if (j.contains("verify")) {
    const json& s = j.at("verify");
    only_keys(s, "verify", {"decay", "scaling", "contraction", "asymptotics"});
    if (s.contains("decay")) {
      const json& t = s.at("decay");
      only_keys(t, "verify.decay", {"n", "p", "theta"});
      get(t, "n", c.decay_n, "verify.decay");
      get(t, "p", c.decay_p, "verify.decay");
      get(t, "theta", c.decay_theta, "verify.decay");
    }
    if (s.contains("scaling")) {
      only_keys(s.at("scaling"), "verify.scaling", {"lambdas"});
      get(s.at("scaling"), "lambdas", c.scaling_lambdas, "verify.scaling");
    }
    if (s.contains("contraction")) {
      only_keys(s.at("contraction"), "verify.contraction", {"kappas"});
      get(s.at("contraction"), "kappas", c.contraction_kappas, "verify.contraction");
    }
    if (s.contains("asymptotics")) {
      const json& t = s.at("asymptotics");
      only_keys(t, "verify.asymptotics", {"perturbation", "field", "T", "n_steps", "gate"});
      if (t.contains("perturbation")) c.perturbation = profile_from(t.at("perturbation"), "verify.asymptotics.perturbation");
      get(t, "field", c.perturbation_field, "verify.asymptotics");
      get(t, "T", c.asymptotics_T, "verify.asymptotics");
      get(t, "n_steps", c.asymptotics_steps, "verify.asymptotics");
      get(t, "gate", c.asymptotics_gate, "verify.asymptotics");
    }
  }
  validate(c);
  return c;
}

json to_json(const RunConfig& c) {
  json j;
  j["schema_version"] = schema_version;
  j["fractional"] = {{"alpha", c.alpha}, {"beta", c.beta}};
  j["grid"] = {{"d", c.d}, {"n", c.n}, {"box_length", c.box_length}};
  j["time"] = {{"T", c.T}, {"n_steps", c.n_steps}};
  j["exponents"] = {{"lambda", c.lambda}, {"r", c.r}, {"q", c.q}};
  j["initial"] = {{"u", profile_to(c.u)}, {"v", profile_to(c.v)}, {"w", profile_to(c.w)},
                  {"phi", profile_to(c.phi)}, {"seed", c.seed}};
  j["initial"]["kappa"] = c.kappa ? json(*c.kappa) : json(nullptr);
  j["picard"] = {{"max", c.picard_max}, {"tol", c.picard_tol}, {"stopping_rule", c.stopping_rule}};
  j["solver"] = {{"dealias", c.dealias}, {"w_reaction", c.w_reaction}};
  j["output"] = {{"directory", c.output_dir}, {"snapshot_every", c.snapshot_every}};
  j["verify"] = {
      {"decay", {{"n", c.decay_n}, {"p", c.decay_p}, {"theta", c.decay_theta}}},
      {"scaling", {{"lambdas", c.scaling_lambdas}}},
      {"contraction", {{"kappas", c.contraction_kappas}}},
      {"asymptotics",
       {{"perturbation", profile_to(c.perturbation)},
        {"field", c.perturbation_field},
        {"T", c.asymptotics_T},
        {"n_steps", c.asymptotics_steps},
        {"gate", c.asymptotics_gate}}}};
  return j;
}

RunConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    bad(std::string("config: not valid JSON (") + e.what() + ")");
  }
  return from_json(j);
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const RunConfig& c) { return to_json(c).dump(2) + "\n"; }

}  // namespace fks::cli
