#include "fks/cli/commands.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "fks/cli/config.hpp"
#include "fks/cli/profiles.hpp"
#include "fks/error.hpp"
#include "fks/mild.hpp"
#include "fks/spaces.hpp"
#include "fks/specfun/golden_table.hpp"
#include "fks/spectral.hpp"
#include "fks/verify.hpp"

namespace fks::cli {

namespace fs = std::filesystem;

namespace {

struct Failure {
  int code;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& msg) { throw Failure{code, msg}; }

fs::path prepare_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) fail(exit_config, "cannot create output directory '" + dir + "'");
  return fs::path(dir);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(exit_config, "cannot write '" + path.string() + "'");
  f << text;
  if (!f) fail(exit_internal, "write to '" + path.string() + "' failed");
}

std::string stamp() {
  const std::time_t now = std::time(nullptr);
  char buf[64];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return buf;
}

struct Common {
  std::string config_path;
  std::string out_dir;
  int threads = 0;
  std::optional<std::uint64_t> seed;
};

RunConfig load(const Common& c) {
  if (c.config_path.empty()) fail(exit_config, "--config is required");
  RunConfig cfg = load_config(c.config_path);
  if (c.seed) cfg.seed = *c.seed;
  if (!c.out_dir.empty()) cfg.output_dir = c.out_dir;
  return cfg;
}

int cmd_specfun_table(const std::string& out_dir, std::optional<double> alpha, std::ostream& out) {
  const fs::path dir = prepare_dir(out_dir.empty() ? "." : out_dir);
  const auto rows = specfun::default_golden_table(alpha);
  std::ostringstream os;
  specfun::write_golden_table(os, rows);
  const fs::path path = dir / "specfun_golden.txt";
  write_text(path, os.str());
  out << "wrote " << rows.size() << " rows to " << path.string() << "\n";
  return exit_ok;
}

int cmd_solve(const RunConfig& cfg, std::ostream& out) {
  const Problem pr = build_problem(cfg, true);
  const fs::path dir = prepare_dir(cfg.output_dir);
  std::ostringstream log;
  log << stamp() << " solve start\n";
  mild::PicardOptions po;
  if (cfg.stopping_rule == "space_norm") {
    const auto e = pr.exponents;
    const auto sc = pr.solver;
    po.norm = [e, sc](const mild::Trajectory& t) { return verify::trajectory_space_norm(t, sc, e); };
  }
  const mild::SolveResult res = mild::picard_solve(pr.init, pr.solver, po);
  write_text(dir / "run.csv", mild::diagnostics_csv(res, pr.solver));
  std::ostringstream it;
  it << "iter,delta,ratio\n";
  for (const auto& i : res.iterations) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%d,%.10g,%.10g\n", i.iter, i.delta, i.ratio);
    it << buf;
  }
  write_text(dir / "picard.csv", it.str());
  const fs::path snaps = prepare_dir((dir / "snapshots").string());
  const int N = pr.solver.n_steps;
  for (const auto& s : res.trajectory) {
    const int n = s.t_index;
    const bool keep = n == 0 || n == N || (cfg.snapshot_every > 0 && n % cfg.snapshot_every == 0);
    if (!keep) continue;
    char name[32];
    const double t = pr.solver.time(n);
    for (auto [fld, tag] : {std::pair{&s.u, "u"}, {&s.v, "v"}, {&s.w, "w"}}) {
      std::snprintf(name, sizeof name, "%s_%05d.fks", tag, n);
      spectral::write_snapshot((snaps / name).string(), *fld, {t, cfg.alpha, cfg.beta, tag});
    }
  }
  log << stamp() << " solve end: " << res.message << "\n";
  write_text(dir / "run.log", log.str());
  out << res.message << "\n";
  if (!res.converged) fail(exit_nonconvergence, "picard: " + res.message);
  return exit_ok;
}

int verify_decay(const RunConfig& cfg, const std::string& kind, std::ostream& out) {
  verify::DecayRequest r;
  if (kind == "heat")
    r.kind = verify::DecayKind::heat;
  else if (kind == "S")
    r.kind = verify::DecayKind::S;
  else if (kind == "P")
    r.kind = verify::DecayKind::P;
  else
    fail(exit_config, "--kind must be heat, S or P");
  r.params = spectral::FracParams(cfg.alpha, cfg.beta);
  r.theta_order = cfg.decay_theta;
  r.norm.p = cfg.decay_p;
  const spectral::GridSpec g{cfg.d, cfg.decay_n, cfg.box_length};
  const auto f = verify::centered_spike(g);
  verify::DecayReport rep;
  try {
    rep = verify::decay_exponent(f, r, verify::default_window(g, r));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::domain || e.kind() == ErrorKind::window_invalid) fail(exit_config, e.what());
    throw;
  }
  const fs::path dir = prepare_dir(cfg.output_dir);
  write_text(dir / ("decay_" + kind + ".csv"), rep.csv());
  out << "decay " << rep.operator_desc << " " << rep.norm_desc << ": measured " << rep.measured_slope << " predicted "
      << rep.predicted_slope << " rel_err " << rep.rel_err << "\n";
  if (!(rep.rel_err < 0.10)) fail(exit_nonconvergence, "decay slope off by " + std::to_string(rep.rel_err));
  return exit_ok;
}

int verify_scaling(const RunConfig& cfg, std::ostream& out) {
  const Problem pr = build_problem(cfg, true);
  const auto reps = mild::scaling_family_check(pr.solver, pr.init, cfg.scaling_lambdas);
  std::ostringstream os;
  os << "lambda,discrepancy,converged\n";
  bool ok = true;
  for (const auto& r : reps) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.10g,%.6g,%d\n", r.lambda, r.discrepancy, r.converged ? 1 : 0);
    os << buf;
    ok = ok && r.converged && r.discrepancy < 1e-8;
    out << "scaling lambda " << r.lambda << ": discrepancy " << r.discrepancy << "\n";
  }
  write_text(prepare_dir(cfg.output_dir) / "scaling.csv", os.str());
  if (!ok) fail(exit_nonconvergence, "scaling discrepancy above 1e-8 or a solve did not converge");
  return exit_ok;
}

int verify_contraction(const RunConfig& cfg, std::ostream& out) {
  RunConfig base = cfg;
  base.kappa.reset();  // the probe does its own scaling
  const Problem pr = build_problem(base, true);
  const auto rep = verify::contraction_probe(pr.solver, pr.init, pr.exponents, cfg.contraction_kappas);
  write_text(prepare_dir(cfg.output_dir) / "contraction.csv", rep.csv());
  for (const auto& row : rep.rows)
    out << "kappa " << row.kappa << ": " << row.iterations.size() << " iterations, max ratio "
        << (row.ratio_defined ? std::to_string(row.max_ratio) : std::string("undefined")) << ", " << row.message
        << "\n";
  out << "threshold " << (std::isnan(rep.threshold) ? std::string("not reached") : std::to_string(rep.threshold))
      << ", monotone " << (rep.monotone ? "yes" : "no") << "\n";
  if (!rep.smallest_contracts) fail(exit_nonconvergence, "smallest kappa does not contract with ratio < 1/2");
  return exit_ok;
}

int verify_asymptotics(const RunConfig& cfg, std::ostream& out) {
  RunConfig c = cfg;
  c.T = cfg.asymptotics_T;
  c.n_steps = cfg.asymptotics_steps;
  const Problem pr = build_problem(c, true);
  mild::SolverState b = pr.init;
  const spectral::GridSpec& g = pr.solver.grid;
  if (cfg.perturbation_field == "u")
    b.u = b.u + make_profile(cfg.perturbation, g, g.d, cfg.seed + 10);
  else if (cfg.perturbation_field == "v")
    b.v = b.v + make_profile(cfg.perturbation, g, 1, cfg.seed + 10);
  else
    b.w = b.w + make_profile(cfg.perturbation, g, 1, cfg.seed + 10);
  verify::AsymptoticsOptions opts;
  opts.kappa_gate = cfg.asymptotics_gate;
  verify::AsymptoticsReport rep;
  try {
    rep = verify::asymptotics_experiment(pr.solver, pr.exponents, pr.init, b, opts);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::gate_failure) fail(exit_config, e.what());
    if (e.kind() == ErrorKind::numerical) fail(exit_nonconvergence, e.what());
    throw;
  }
  write_text(prepare_dir(cfg.output_dir) / "asymptotics.csv", rep.csv());
  out << "asymptotics: f final ratio " << rep.f_final_ratio << ", g final ratio " << rep.g_final_ratio
      << ", transients " << rep.f_transient << "/" << rep.g_transient << ", recorded constant "
      << rep.recorded_constant << "\n";
  if (!rep.f_monotone || !rep.g_monotone) fail(exit_nonconvergence, "f or g not monotone after the transient");
  if (!rep.forward_holds || !rep.reverse_holds) fail(exit_nonconvergence, "asymptotic implication failed");
  return exit_ok;
}

int verify_norms(const RunConfig& cfg, std::ostream& out) {
  const Problem pr = build_problem(cfg, true);
  const auto dn = verify::data_norm(pr.init, pr.solver.phi, pr.exponents);
  std::ostringstream os;
  os << "quantity,value\n";
  const char* names[5] = {"besov_u0", "besov_v0", "besov_grad_w0", "sobolev_morrey_w0", "morrey_grad_phi"};
  char buf[128];
  for (int i = 0; i < 5; ++i) {
    std::snprintf(buf, sizeof buf, "%s,%.10g\n", names[i], dn.terms[i]);
    os << buf;
  }
  std::snprintf(buf, sizeof buf, "data_norm_total,%.10g\n", dn.total());
  os << buf;
  // λ = 0 Morrey against plain L^p on v0
  double worst = 0.0;
  for (double p : {1.0, 2.0, 4.0}) {
    const double m = spaces::morrey_norm(pr.init.v, spaces::MorreyParams{p, 0.0});
    const double l = spectral::lp_norm(pr.init.v, p);
    worst = std::max(worst, std::abs(m - l) / std::max(l, 1e-300));
  }
  std::snprintf(buf, sizeof buf, "morrey_lambda0_vs_lp,%.6g\n", worst);
  os << buf;
  write_text(prepare_dir(cfg.output_dir) / "norms.csv", os.str());
  out << "data norm " << dn.total() << "\n";
  return exit_ok;
}

int verify_operators(const RunConfig& cfg, std::ostream& out) {
  const spectral::GridSpec g{cfg.d, cfg.n, cfg.box_length};
  const auto f = spaces::random_band_limited(g, 4, cfg.seed, 1);
  const auto F = spectral::transform(f);
  std::ostringstream os;
  os << "alpha,beta,kind,rel_l2\n";
  double worst = 0.0;
  for (double a : {0.3, 0.5, 0.8}) {
    for (double b : {1.2, 1.5, 1.9}) {
      const spectral::FracParams p(a, b);
      for (auto kind : {spectral::OperatorKind::S, spectral::OperatorKind::P}) {
        const auto A = spectral::inverse_transform(spectral::solution_op(F, 0.5, p, kind));
        const auto B = spectral::inverse_transform(spectral::subordinate_apply(F, 0.5, p, kind));
        const double rel = spectral::l2_norm(A - B) / spectral::l2_norm(A);
        worst = std::max(worst, rel);
        char buf[96];
        std::snprintf(buf, sizeof buf, "%.3g,%.3g,%s,%.6g\n", a, b, kind == spectral::OperatorKind::S ? "S" : "P", rel);
        os << buf;
      }
    }
  }
  write_text(prepare_dir(cfg.output_dir) / "operators.csv", os.str());
  out << "operators: max relative discrepancy " << worst << "\n";
  if (!(worst < 1e-5)) fail(exit_nonconvergence, "operator discrepancy " + std::to_string(worst) + " above 1e-5");
  return exit_ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fractional Keller-Segel-Navier-Stokes pseudospectral solver and verification harness", "fks"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "run configuration (JSON)");
    sub->add_option("--out", common.out_dir, "output directory");
    sub->add_option("--threads", common.threads, "worker threads (0 = hardware)")->check(CLI::NonNegativeNumber);
    sub->add_option("--seed", common.seed, "seed override for random profiles");
  };
  auto* table = app.add_subcommand("specfun-table", "write the special-function golden table");
  std::optional<double> table_alpha;
  add_common(table);
  table->add_option("--alpha", table_alpha, "restrict to one alpha");
  auto* solve = app.add_subcommand("solve", "Picard solve of the mild formulation");
  add_common(solve);
  auto* ver = app.add_subcommand("verify", "verification experiments");
  ver->require_subcommand(1);
  std::string decay_kind = "S";
  std::vector<CLI::App*> checks;
  for (const char* name : {"decay", "scaling", "contraction", "asymptotics", "norms", "operators"}) {
    auto* s = ver->add_subcommand(name);
    add_common(s);
    if (std::string(name) == "decay") s->add_option("--kind", decay_kind, "heat, S or P");
    checks.push_back(s);
  }

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    try {
      app.parse(rev);
    } catch (const CLI::CallForHelp&) {
      out << app.help();
      return exit_ok;
    } catch (const CLI::ParseError& e) {
      fail(exit_config, std::string(e.what()) + "\n" + app.help());
    }
    if (common.threads > 0) spectral::set_thread_count(common.threads);
    if (table->parsed()) return cmd_specfun_table(common.out_dir, table_alpha, out);
    if (solve->parsed()) return cmd_solve(load(common), out);
    for (auto* s : checks) {
      if (!s->parsed()) continue;
      const RunConfig cfg = load(common);
      const std::string n = s->get_name();
      if (n == "decay") return verify_decay(cfg, decay_kind, out);
      if (n == "scaling") return verify_scaling(cfg, out);
      if (n == "contraction") return verify_contraction(cfg, out);
      if (n == "asymptotics") return verify_asymptotics(cfg, out);
      if (n == "norms") return verify_norms(cfg, out);
      return verify_operators(cfg, out);
    }
    fail(exit_config, "no command given\n" + app.help());
  } catch (const Failure& f) {
    std::string first = f.message.substr(0, f.message.find('\n'));
    err << "ERR " << f.code << ": " << first << "\n";
    if (f.message.size() > first.size()) err << f.message.substr(first.size() + 1);
    return f.code;
  } catch (const Error& e) {
    const int code = e.kind() == ErrorKind::config ? exit_config : exit_internal;
    err << "ERR " << code << ": " << e.what() << "\n";
    return code;
  } catch (const std::exception& e) {
    err << "ERR " << exit_internal << ": " << e.what() << "\n";
    return exit_internal;
  }
}

}  // namespace fks::cli
