// Command-line front end: run, converge, consistency, oracle-check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "kgs/config.hpp"
#include "kgs/harness.hpp"
#include "kgs/report_io.hpp"

namespace {

using namespace kgs;

struct Flags {
  std::string config;
  std::string scheme;
  std::string c;
  std::string tau;
  std::string tau_dyadic;
  std::optional<int> n;
  std::optional<int> dim;
  std::optional<double> T;
  std::optional<double> theta_psi;
  std::optional<double> theta_z;
  std::optional<std::uint64_t> seed;
  std::optional<double> norm_r;
  bool dealias = false;
  std::string out;
  std::string init;  // run only
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file (flags override it)");
  sub->add_option("--scheme", f.scheme, "ua1 | ua2 | limit | splitting");
  sub->add_option("--c", f.c, "comma-separated list of c values");
  auto* tau = sub->add_option("--tau", f.tau, "comma-separated list of time steps");
  auto* dy = sub->add_option("--tau-dyadic", f.tau_dyadic, "jmin:jmax, tau = T/2^j");
  tau->excludes(dy);
  sub->add_option("--n", f.n, "grid points per axis (power of two)");
  sub->add_option("--dim", f.dim, "space dimension (1..3)");
  sub->add_option("--T", f.T, "final time");
  sub->add_option("--theta-psi", f.theta_psi, "Sobolev regularity of psi data");
  sub->add_option("--theta-z", f.theta_z, "Sobolev regularity of z data");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--norm-r", f.norm_r, "Sobolev index of the error norm");
  sub->add_flag("--dealias", f.dealias, "2/3-rule dealiasing of products");
  sub->add_option("--out", f.out, "output directory");
}

RunConfig build_config(const Flags& f) {
  RunConfig cfg;
  if (!f.config.empty()) cfg = load_config(f.config, cfg);
  try {
    if (!f.scheme.empty()) cfg.scheme = parse_scheme(f.scheme);
    if (!f.c.empty()) cfg.c_list = parse_number_list(f.c, "--c");
    if (!f.tau.empty()) cfg.tau_list = parse_number_list(f.tau, "--tau");
    if (!f.tau_dyadic.empty()) {
      cfg.tau_dyadic = parse_dyadic_range(f.tau_dyadic);
      cfg.tau_list.clear();
    }
    if (f.n) cfg.n = *f.n;
    if (f.dim) cfg.dim = *f.dim;
    if (f.T) cfg.T = *f.T;
    if (f.theta_psi) cfg.theta_psi = *f.theta_psi;
    if (f.theta_z) cfg.theta_z = *f.theta_z;
    if (f.seed) cfg.seed = *f.seed;
    if (f.norm_r) cfg.norm_r = *f.norm_r;
    if (f.dealias) cfg.dealias = true;
    if (!f.out.empty()) cfg.out_dir = f.out;
  } catch (const Error& e) {
    throw Error(std::string("flag ") + e.what());
  }
  cfg.resolve_taus();
  cfg.validate();
  return cfg;
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

int cmd_run(const Flags& f) {
  RunConfig cfg = build_config(f);
  const double c = cfg.c_list.front();
  const double tau = cfg.tau_list.front();
  const GridPtr grid = cfg.grid();
  KgsState init = f.init.empty() ? make_state(grid, CParam(c), cfg.theta_psi, cfg.theta_z, cfg.seed)
                                 : load_state(f.init);
  StepParams p(CParam(c), tau);
  p.dealias = cfg.dealias;
  std::vector<TraceEntry> trace;
  const auto start = std::chrono::steady_clock::now();
  const KgsState out = evolve(cfg.scheme, init, p, cfg.steps_for(tau), &trace);
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  std::string csv = "step,t,h1_u,h1_psi,mass\n";
  for (const auto& e : trace) {
    char line[160];
    std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g,%.17g\n", e.step, tau * e.step, e.h1_u, e.h1_psi, e.mass);
    csv += line;
  }
  write_file_atomic(cfg.out_dir / "trace.csv", csv);
  save_state(out, cfg.out_dir / "state.json");
  std::cout << to_string(cfg.scheme) << " c=" << c << " tau=" << tau << " steps=" << cfg.steps_for(tau)
            << " runtime_ms=" << fmt(ms) << "\n"
            << "H1(u)=" << fmt(trace.back().h1_u) << " H1(psi)=" << fmt(trace.back().h1_psi)
            << " mass drift=" << fmt(trace.back().mass - trace.front().mass) << "\n"
            << "wrote " << (cfg.out_dir / "state.json").string() << ", " << (cfg.out_dir / "trace.csv").string()
            << "\n";
  return 0;
}

int cmd_converge(const Flags& f) {
  const RunConfig cfg = build_config(f);
  const ConvergenceReport report = run_convergence(cfg);
  emit_csv(report, cfg.out_dir / "convergence.csv");
  emit_svg(report, cfg.out_dir / "convergence.svg");
  write_file_atomic(cfg.out_dir / "convergence.json", report_json(report));
  std::cout << "scheme " << to_string(cfg.scheme) << ", n=" << cfg.n << ", T=" << cfg.T << "\n";
  for (std::size_t i = 0; i < report.fits.size(); ++i) {
    const auto& fit = report.fits[i];
    const auto& ref = report.references[i];
    std::cout << "c=" << fit.c << "  slope=" << (fit.valid() ? fmt(fit.slope) : std::string("n/a"))
              << "  points=" << fit.points << "  ref floor=" << fmt(ref.floor);
    if (ref.certification) std::cout << "  ref vs resolved=" << fmt(*ref.certification);
    std::cout << "\n";
  }
  std::cout << "wrote " << (cfg.out_dir / "convergence.{csv,svg,json}").string() << "\n";
  return 0;
}

int cmd_consistency(const Flags& f) {
  const RunConfig cfg = build_config(f);
  const ConsistencyReport report = run_consistency(cfg);
  write_file_atomic(cfg.out_dir / "consistency.csv", format_consistency_csv(report));
  write_file_atomic(cfg.out_dir / "consistency.json", report_json(report));
  for (const auto& r : report.rows)
    std::cout << r.scheme << " c=" << r.c << " dev_u=" << fmt(r.dev_u) << " dev_psi=" << fmt(r.dev_psi) << "\n";
  for (const auto& fit : report.fits)
    std::cout << "slope vs c: " << fit.scheme << " " << fit.component << " " << fmt(fit.slope) << "\n";
  std::cout << "residual symbol ratio " << fmt(report.h4_ratio) << "\n";
  return 0;
}

int cmd_oracle(const Flags& f) {
  const RunConfig cfg = build_config(f);
  const OracleReport report = run_oracle_check(cfg);
  write_file_atomic(cfg.out_dir / "oracle.csv", format_oracle_csv(report));
  write_file_atomic(cfg.out_dir / "oracle.json", report_json(report));
  for (const auto& g : report.gates) {
    char line[160];
    std::snprintf(line, sizeof line, "%-4s %-11s c=%-6g slope=%7.3f  [%.1f, %.1f]\n", g.pass() ? "PASS" : "FAIL",
                  g.gate.c_str(), g.c, g.slope, g.lo, g.hi);
    std::cout << line;
  }
  return report.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Uniformly accurate integrators for the Klein-Gordon-Schrodinger system"};
  app.require_subcommand(1);
  Flags run_f, conv_f, cons_f, orc_f;
  auto* run = app.add_subcommand("run", "evolve one trajectory, dump the final state");
  add_common(run, run_f);
  run->add_option("--init", run_f.init, "initial state (JSON dump) instead of random data");
  auto* conv = app.add_subcommand("converge", "convergence study against a fine reference");
  add_common(conv, conv_f);
  auto* cons = app.add_subcommand("consistency", "one-step distance to the limit flow as c grows");
  add_common(cons, cons_f);
  auto* orc = app.add_subcommand("oracle-check", "closed forms and local errors against quadrature");
  add_common(orc, orc_f);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(run_f);
    if (*conv) return cmd_converge(conv_f);
    if (*cons) return cmd_consistency(cons_f);
    if (*orc) return cmd_oracle(orc_f);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
