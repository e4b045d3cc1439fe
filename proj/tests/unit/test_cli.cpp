#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include "fks/cli/commands.hpp"
#include "fks/cli/config.hpp"
#include "fks/cli/profiles.hpp"
#include "fks/error.hpp"
#include "fks/specfun/golden_table.hpp"
#include "fks/spectral.hpp"
#include "fks/verify.hpp"

using namespace fks;
using namespace fks::cli;
namespace fs = std::filesystem;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an fks::Error");
  return ErrorKind::domain;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("fks_test_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

double sup(const spectral::Field& f) { return spectral::lp_norm(f, INFINITY); }

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

RunConfig small() {
  RunConfig c;
  c.n = 16;
  c.T = 0.5;
  c.n_steps = 8;
  c.r = {3, 2, 4};
  c.q = {3, 2, 4};
  c.u.profile = "vortex";
  c.u.width = 0.8;
  c.v.profile = "gaussian";
  c.v.width = 0.6;
  c.v.offset = 0.5;
  c.w.profile = "single_mode";
  c.w.k = {1, 0};
  c.phi.profile = "single_mode";
  c.phi.k = {0, 1};
  c.kappa = 1e-3;
  c.snapshot_every = 4;
  return c;
}

fs::path write_cfg(const fs::path& dir, const RunConfig& c) {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p) << serialize_config(c);
  return p;
}

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fks");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string c;
  while (std::getline(ss, c, ',')) cells.push_back(c);
  return cells;
}

}  // namespace

TEST_CASE("config round trip and schema errors") {
  RunConfig c = small();
  c.seed = 42;
  c.stopping_rule = "space_norm";
  c.contraction_kappas = {0.0, 0.5};
  const RunConfig back = parse_config(serialize_config(c));
  CHECK(back == c);
  CHECK(serialize_config(back) == serialize_config(c));

  // comments are allowed; absent sections keep defaults
  const RunConfig d = parse_config("// defaults\n{ \"schema_version\": 1 }");
  CHECK(d == RunConfig{});

  CHECK(kind_of([] { parse_config("{ \"schema_version\": 1, \"grid\": { \"nn\": 32 } }"); }) == ErrorKind::config);
  CHECK(kind_of([] { parse_config("{ \"schema_version\": 2 }"); }) == ErrorKind::config);
  CHECK(kind_of([] { parse_config("{ \"grid\": { \"n\": 32 } }"); }) == ErrorKind::config);
  CHECK(kind_of([] { parse_config("{ \"schema_version\": 1, \"grid\": { \"n\": 24 } }"); }) == ErrorKind::config);
  CHECK(kind_of([] { parse_config("{ \"schema_version\": 1, \"fractional\": { \"alpha\": 1.2 } }"); }) ==
        ErrorKind::config);
  CHECK(kind_of([] { parse_config("{ \"schema_version\": 1, \"grid\": { \"n\": \"big\" } }"); }) ==
        ErrorKind::config);
  CHECK(kind_of([] { parse_config("{ not json"); }) == ErrorKind::config);
  CHECK(kind_of([] { load_config("/nonexistent/fks.cfg"); }) == ErrorKind::config);
}

TEST_CASE("profiles: vortex is divergence free, kappa fixes the data norm") {
  const RunConfig c = small();
  const spectral::GridSpec g{2, 32, c.box_length};
  const spectral::Field u = make_profile(c.u, g, 2, 1);
  CHECK(sup(spectral::divergence(u)) < 1e-12);
  CHECK(sup(u) > 0.1);

  ProfileSpec rb;
  rb.profile = "random_band_limited";
  rb.kmax = 3;
  const auto a = make_profile(rb, g, 1, 5), b = make_profile(rb, g, 1, 5), e = make_profile(rb, g, 1, 6);
  CHECK(a.values == b.values);
  CHECK(a.values != e.values);

  RunConfig k = c;
  k.n = 32;
  for (double kappa : {1e-3, 1e-1}) {
    k.kappa = kappa;
    const Problem pr = build_problem(k);
    CHECK(verify::data_norm(pr.init, pr.solver.phi, pr.exponents).total() == doctest::Approx(kappa).epsilon(1e-10));
    CHECK(sup(spectral::divergence(pr.init.u)) < 1e-12);
  }
}

TEST_CASE("solve: converges, contracts, deterministic output") {
  const fs::path dir = scratch("solve");
  const fs::path cfg = write_cfg(dir, small());
  const Outcome a = run_cli({"solve", "--config", cfg.string(), "--out", (dir / "a").string()});
  INFO(a.err);
  REQUIRE(a.code == 0);
  std::istringstream csv(slurp(dir / "a" / "run.csv"));
  std::string header, line, last;
  std::getline(csv, header);
  CHECK(header == "iter,t_index,t,picard_ratio,div_u,norm_u,norm_v,norm_w,residual_u,residual_v,residual_w");
  int rows = 0;
  while (std::getline(csv, line)) {
    last = line;
    ++rows;
    CHECK(std::abs(std::stod(split(line)[4])) < 1e-10);
  }
  CHECK(rows == 9);
  CHECK(std::stod(split(last)[3]) < 0.5);
  CHECK(fs::exists(dir / "a" / "run.log"));
  for (const char* s : {"u_00000.fks", "v_00004.fks", "w_00008.fks"}) CHECK(fs::exists(dir / "a" / "snapshots" / s));
  CHECK_FALSE(fs::exists(dir / "a" / "snapshots" / "u_00002.fks"));

  const Outcome b = run_cli({"solve", "--config", cfg.string(), "--out", (dir / "b").string(), "--threads", "1"});
  REQUIRE(b.code == 0);
  CHECK(slurp(dir / "a" / "run.csv") == slurp(dir / "b" / "run.csv"));
  CHECK(slurp(dir / "a" / "picard.csv") == slurp(dir / "b" / "picard.csv"));
  for (const char* s : {"u_00008.fks", "v_00008.fks", "w_00008.fks"})
    CHECK(slurp(dir / "a" / "snapshots" / s) == slurp(dir / "b" / "snapshots" / s));
}

TEST_CASE("solve: space_norm stopping rule and large data") {
  const fs::path dir = scratch("rules");
  RunConfig c = small();
  c.stopping_rule = "space_norm";
  CHECK(run_cli({"solve", "--config", write_cfg(dir, c).string(), "--out", (dir / "s").string()}).code == 0);

  c.stopping_rule = "l2";
  c.kappa = 50.0;
  c.picard_max = 4;
  const Outcome o = run_cli({"solve", "--config", write_cfg(dir, c).string(), "--out", (dir / "big").string()});
  CHECK(o.code == 3);
  CHECK(o.err.rfind("ERR 3: ", 0) == 0);
  CHECK(fs::exists(dir / "big" / "run.csv"));
}

TEST_CASE("zero data gives zero snapshots") {
  const fs::path dir = scratch("zero");
  RunConfig c;
  c.n = 16;
  c.n_steps = 4;
  const Outcome o = run_cli({"solve", "--config", write_cfg(dir, c).string(), "--out", (dir / "z").string()});
  REQUIRE(o.code == 0);
  for (const char* s : {"u_00000.fks", "u_00004.fks", "v_00004.fks", "w_00004.fks"}) {
    spectral::SnapshotMeta meta;
    const spectral::Field f = spectral::read_snapshot((dir / "z" / "snapshots" / s).string(), &meta);
    CHECK(sup(f) == 0.0);
  }
}

TEST_CASE("usage and config errors exit 2 with one ERR line") {
  const fs::path dir = scratch("errors");
  RunConfig c = small();
  c.q = {3, 2, 12};
  const Outcome q = run_cli({"solve", "--config", write_cfg(dir, c).string(), "--out", (dir / "q").string()});
  CHECK(q.code == 2);
  CHECK(q.err.rfind("ERR 2: ", 0) == 0);
  CHECK(q.err.find("q3 < (d-lambda)/(2-beta) = 10") != std::string::npos);

  const Outcome u = run_cli({"frobnicate"});
  CHECK(u.code == 2);
  CHECK(u.err.rfind("ERR 2: ", 0) == 0);
  CHECK(u.err.find("solve") != std::string::npos);  // usage text follows

  const Outcome none = run_cli({"solve"});
  CHECK(none.code == 2);

  // output path below a regular file cannot be created
  std::ofstream(dir / "plain") << "x";
  const fs::path good = write_cfg(dir, small());
  const Outcome p = run_cli({"solve", "--config", good.string(), "--out", (dir / "plain" / "sub").string()});
  CHECK(p.code == 2);
  CHECK(p.err.rfind("ERR 2: ", 0) == 0);

  const Outcome k = run_cli({"verify", "decay", "--config", good.string(), "--kind", "Q"});
  CHECK(k.code == 2);
}

TEST_CASE("specfun-table writes the golden table") {
  const fs::path dir = scratch("table");
  const Outcome o = run_cli({"specfun-table", "--out", dir.string()});
  REQUIRE(o.code == 0);
  const std::string text = slurp(dir / "specfun_golden.txt");
  std::istringstream in(text);
  const auto rows = specfun::read_golden_table(in);
  CHECK(rows.size() > 100);
  int hits = 0;
  for (const auto& r : rows) {
    if (r.name == "mittag_leffler" && r.alpha == 1.0 && r.beta == 1.0 && r.z == -1.0) {
      CHECK(r.expected == doctest::Approx(0.3678794412).epsilon(1e-10));
      ++hits;
    }
  }
  CHECK(hits == 1);

  const Outcome one = run_cli({"specfun-table", "--out", (dir / "a5").string(), "--alpha", "0.5"});
  REQUIRE(one.code == 0);
  std::istringstream in5(slurp(dir / "a5" / "specfun_golden.txt"));
  for (const auto& r : specfun::read_golden_table(in5)) CHECK(r.alpha == 0.5);
}

TEST_CASE("verify subcommands on a small run") {
  const fs::path dir = scratch("verify");
  RunConfig c = small();
  c.decay_n = 64;
  const std::string cfg = write_cfg(dir, c).string();
  const std::string out = (dir / "o").string();

  CHECK(run_cli({"verify", "operators", "--config", cfg, "--out", out}).code == 0);
  CHECK(slurp(dir / "o" / "operators.csv").rfind("alpha,beta,kind,rel_l2\n", 0) == 0);

  CHECK(run_cli({"verify", "norms", "--config", cfg, "--out", out}).code == 0);
  const std::string norms = slurp(dir / "o" / "norms.csv");
  CHECK(norms.find("data_norm_total,0.001\n") != std::string::npos);

  CHECK(run_cli({"verify", "scaling", "--config", cfg, "--out", out}).code == 0);
  CHECK(slurp(dir / "o" / "scaling.csv").rfind("lambda,discrepancy,converged\n", 0) == 0);

  const Outcome d = run_cli({"verify", "decay", "--config", cfg, "--out", out, "--kind", "heat"});
  INFO(d.out << d.err);
  CHECK(d.code == 0);
  CHECK(fs::exists(dir / "o" / "decay_heat.csv"));
}
