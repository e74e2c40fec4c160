#pragma once

// Batch front end. Subcommands:
//
//   simulate    one day, probe.csv + mass.csv
//   fit         kappa or gamma stage, scan.csv + fit_summary.csv
//   compare     pre/post runs against their measurements
//   scan        discrepancy on a 1D grid, or a (kappa, gamma) diagnostic grid
//   synthesize  measurements CSV sampled from a simulated day
//
// Exit codes: 0 ok, 1 input or configuration problem, 2 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "noxsim/domain_model.hpp"
#include "noxsim/error.hpp"
#include "noxsim/fit.hpp"
#include "noxsim/io/config.hpp"
#include "noxsim/io/csv.hpp"
#include "noxsim/metrics.hpp"
#include "noxsim/signal.hpp"
#include "noxsim/solver.hpp"

namespace noxsim::app {

enum ExitCode : int { exit_ok = 0, exit_input = 1, exit_numeric = 2 };

namespace detail {

namespace fs = std::filesystem;
using io::Cell;

/// Run-control overrides shared by every subcommand.
struct Overrides {
  std::optional<int> steps;
  std::optional<double> theta;
  std::vector<int> mesh;
  bool warm_start = false;
};

inline void add_overrides(CLI::App& cmd, Overrides& o) {
  cmd.add_option("--steps", o.steps, "time steps per day");
  cmd.add_option("--theta", o.theta, "theta of the time scheme (1 implicit Euler, 0.5 Crank-Nicolson)");
  cmd.add_option("--mesh", o.mesh, "elements per axis")->expected(2);
  cmd.add_flag("--warm-start", o.warm_start, "start from the end state of a preliminary day");
}

inline ScenarioConfig apply(ScenarioConfig c, const Overrides& o) {
  if (o.steps) c.numerics.steps_per_day = *o.steps;
  if (o.theta) c.numerics.theta = *o.theta;
  if (!o.mesh.empty()) {
    c.numerics.nx = o.mesh.at(0);
    c.numerics.ny = o.mesh.at(1);
  }
  if (o.warm_start) c.numerics.warm_start = true;
  c.numerics.validate();
  return c;
}

inline fs::path output_dir(const std::string& flag) {
  fs::path dir = flag;
  if (dir.empty()) {
    const char* env = std::getenv("NOXSIM_OUT_DIR");
    dir = env && *env ? fs::path(env) : fs::path(".");
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw InputError("cannot create output directory: " + dir.string());
  return dir;
}

inline SearchInterval parse_interval(const std::string& text, SearchInterval fallback) {
  if (text.empty()) return fallback;
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidParameter("interval", "expected lo:hi, got '" + text + "'");
  SearchInterval iv = fallback;
  try {
    iv.lower = io::detail::parse_number(io::detail::trim(text.substr(0, colon)), "interval lower bound");
    iv.upper = io::detail::parse_number(io::detail::trim(text.substr(colon + 1)), "interval upper bound");
  } catch (const InputError& e) {
    throw InvalidParameter("interval", e.what());
  }
  iv.validate();
  return iv;
}

/// best_value of the row with parameter == `which` in a fit_summary.csv.
inline double read_fit_summary(const fs::path& path, Parameter which) {
  const auto table = io::detail::read_table(
      path, {"parameter", "best_value", "best_discrepancy", "refinement_iterations", "converged", "boundary_minimum",
             "kappa", "gamma"});
  for (std::size_t r = 0; r < table.rows.size(); ++r)
    if (table.rows[r][0] == to_string(which))
      return io::detail::parse_number(table.rows[r][1], io::detail::where(path, table.lines[r]));
  throw InputError(path.string() + ": no " + std::string(to_string(which)) + " row");
}

inline std::string clock_label(double t) { return io::format_clock(t); }

/// Loaded scenario: physical config, its dimensionless twin and the signals.
struct Scenario {
  ScenarioConfig raw;
  ScenarioConfig cfg;
  io::ScenarioSignals signals;
};

inline Scenario load_scenario(const std::string& path, const Overrides& o) {
  auto raw = apply(io::load_config(path), o);
  auto cfg = nondimensionalize_config(raw);
  auto signals = io::load_signals(raw);
  return {std::move(raw), std::move(cfg), std::move(signals)};
}

inline DailySignal measurements_for(const Scenario& s, const std::string& flag) {
  fs::path p = flag.empty() ? s.raw.inputs.measurements : fs::path(flag);
  if (p.empty()) throw InputError("no measurements: pass --measurements or set inputs.measurements");
  if (!fs::is_regular_file(p)) throw InputError("input file not found (measurements): " + p.string());
  return io::load_measurement_curve(p, io::measurement_window(s.raw));
}

inline void write_config_echo(const fs::path& path, const ScenarioConfig& raw) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write output file: " + path.string());
  io::write_config(out, raw);
}

inline void write_field_csv(const fs::path& path, const fem::Mesh& mesh, const fem::Field& u,
                            const PhysicalParams& p) {
  std::vector<std::vector<Cell>> rows;
  rows.reserve(mesh.node_count());
  for (fem::Index n = 0; n < mesh.node_count(); ++n) {
    const Point x = mesh.node(n);
    rows.push_back({x.x * p.length, x.y * p.length, redimensionalize(u.coefficients[n], p)});
  }
  io::write_csv(path, {"x_m", "y_m", "no_ugm3"}, rows);
}

inline void write_operator(const fs::path& path, const fem::SparseOperator& op) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw InputError("cannot write output file: " + path.string());
  op.write_triplets(out);
}

inline std::vector<std::vector<Cell>> scan_rows(const std::vector<ScanPoint>& pts) {
  std::vector<std::vector<Cell>> rows;
  for (const auto& p : pts) rows.push_back({p.value, p.discrepancy});
  return rows;
}

// --- simulate --------------------------------------------------------------

struct SimulateArgs {
  std::string config;
  std::string out_dir;
  Overrides overrides;
  int snapshot_every = 0;
  bool dump_operators = false;
};

inline int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto s = load_scenario(a.config, a.overrides);
  const auto dir = output_dir(a.out_dir);
  if (a.snapshot_every < 0) throw InvalidParameter("snapshot-every", "must be >= 0");

  const auto start = std::chrono::steady_clock::now();
  int step = 0;
  std::vector<fem::Field> snapshots;
  StepObserver observer;
  if (a.snapshot_every > 0)
    observer = [&](const fem::Field& u) {
      if (++step % a.snapshot_every == 0) snapshots.push_back(u);
    };
  const auto r = run_day(s.cfg, s.signals.traffic, s.signals.solar, observer);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  io::write_series_csv(dir / "probe.csv", r.probe_series, "no_ugm3");
  io::write_series_csv(dir / "mass.csv", r.mass_history, "mass");
  write_config_echo(dir / "config_echo.ini", s.raw);

  if (!snapshots.empty() || a.dump_operators) {
    const FemSystem sys(s.cfg.geometry, s.cfg.numerics.nx, s.cfg.numerics.ny);
    for (const auto& f : snapshots) {
      const long k = std::lround(f.time * s.cfg.numerics.steps_per_day);
      char name[32];
      std::snprintf(name, sizeof name, "field_%05ld.csv", k);
      write_field_csv(dir / name, sys.mesh(), f, s.raw.physical);
    }
    if (a.dump_operators) {
      fs::create_directories(dir / "operators");
      write_operator(dir / "operators" / "M.csv", sys.mass());
      write_operator(dir / "operators" / "K.csv", sys.stiffness());
      write_operator(dir / "operators" / "B_R.csv", sys.robin_mass());
      write_operator(dir / "operators" / "B_Gamma.csv", sys.asphalt_mass());
    }
  }

  const auto peak = std::max_element(r.probe_series.begin(), r.probe_series.end(),
                                     [](const Sample& x, const Sample& y) { return x.value < y.value; });
  out << "scenario " << to_string(s.cfg.tag) << "\n"
      << "traffic_total " << io::format_double(s.signals.traffic_total) << "\n"
      << "peak_ugm3 " << io::format_double(peak->value) << "\n"
      << "peak_time " << io::format_double(peak->t) << " (" << clock_label(peak->t) << ")\n"
      << "mass_change " << io::format_double(r.mass_history.back().value - r.mass_history.front().value) << "\n"
      << "cg_iterations " << r.solver_iterations << "\n"
      << "runtime_s " << seconds << "\n"
      << "wrote " << (dir / "probe.csv").string() << "\n";
  return exit_ok;
}

// --- fit -------------------------------------------------------------------

struct FitArgs {
  std::string config;
  std::string out_dir;
  Overrides overrides;
  std::string stage;
  std::string measurements;
  std::string interval;
  int scan_points = 20;
  bool scan_only = false;
  std::optional<double> kappa;
  std::string kappa_from;
  std::size_t workers = 0;
};

inline int cmd_fit(const FitArgs& a, std::ostream& out) {
  const Parameter which = a.stage == "kappa" ? Parameter::kappa : Parameter::gamma;
  const auto interval =
      parse_interval(a.interval, which == Parameter::kappa ? SearchInterval::kappa_default()
                                                           : SearchInterval::gamma_default());
  std::optional<double> kappa = a.kappa;
  if (which == Parameter::gamma) {
    if (!kappa && !a.kappa_from.empty()) kappa = read_fit_summary(a.kappa_from, Parameter::kappa);
    if (!kappa) throw InputError("gamma stage needs --kappa or --kappa-from");
  }
  const auto s = load_scenario(a.config, a.overrides);
  const auto meas = measurements_for(s, a.measurements);
  const auto dir = output_dir(a.out_dir);

  FitOptions opt;
  opt.scan_points = a.scan_points;
  opt.scan_only = a.scan_only;
  opt.workers = a.workers;
  const auto& m = s.signals.traffic;
  const auto& sol = s.signals.solar;
  const FitResult r = which == Parameter::kappa ? fit_kappa(s.cfg, m, sol, meas, interval, opt)
                                                : fit_gamma(s.cfg, m, sol, meas, *kappa, interval, opt);

  io::write_csv(dir / "scan.csv", {"value", "discrepancy"}, scan_rows(r.scan_points));
  const auto& echo = r.config_echo.physical;
  io::write_csv(dir / "fit_summary.csv",
                {"parameter", "best_value", "best_discrepancy", "refinement_iterations", "converged",
                 "boundary_minimum", "kappa", "gamma"},
                {{std::string(to_string(which)), r.best_value, r.best_discrepancy,
                  static_cast<long long>(r.refinement_iterations), static_cast<long long>(r.converged),
                  static_cast<long long>(r.boundary_minimum), echo.kappa_per_day(), echo.gamma}});

  if (r.boundary_minimum)
    out << "WARN boundary_minimum parameter=" << to_string(which) << " value=" << io::format_double(r.best_value)
        << "\n";
  out << "best_" << to_string(which) << " " << io::format_double(r.best_value) << "\n"
      << "best_discrepancy " << io::format_double(r.best_discrepancy) << "\n"
      << "local_minima " << count_local_minima(r.scan_points) << "\n"
      << "refinement_iterations " << r.refinement_iterations << (a.scan_only ? " (scan only)" : "") << "\n";
  return exit_ok;
}

// --- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string config_pre;
  std::string config_post;
  std::string out_dir;
  Overrides overrides;
  std::optional<double> kappa;
  std::optional<double> gamma;
  std::string kappa_from;
  std::string gamma_from;
};

inline int cmd_compare(const CompareArgs& a, std::ostream& out) {
  auto pre = load_scenario(a.config_pre, a.overrides);
  auto post = load_scenario(a.config_post, a.overrides);
  std::optional<double> kappa = a.kappa;
  std::optional<double> gamma = a.gamma;
  if (!kappa && !a.kappa_from.empty()) kappa = read_fit_summary(a.kappa_from, Parameter::kappa);
  if (!gamma && !a.gamma_from.empty()) gamma = read_fit_summary(a.gamma_from, Parameter::gamma);
  if (kappa) {
    pre.cfg = with_parameter(pre.cfg, Parameter::kappa, *kappa);
    post.cfg = with_parameter(post.cfg, Parameter::kappa, *kappa);
  }
  if (gamma) post.cfg = with_parameter(post.cfg, Parameter::gamma, *gamma);
  if (pre.cfg.numerics.steps_per_day != post.cfg.numerics.steps_per_day)
    throw InvalidParameter("steps_per_day", "pre and post scenarios must share the time grid");

  const auto meas_pre = measurements_for(pre, "");
  const auto meas_post = measurements_for(post, "");
  const auto dir = output_dir(a.out_dir);

  const std::vector<const Scenario*> both{&pre, &post};
  const auto runs = parallel_map(2, [&](std::size_t i) {
    return run_day(both[i]->cfg, both[i]->signals.traffic, both[i]->signals.solar);
  });

  std::vector<std::vector<Cell>> joined;
  for (std::size_t k = 0; k < runs[0].probe_series.size(); ++k) {
    const double t = runs[0].probe_series[k].t;
    joined.push_back({t, runs[0].probe_series[k].value, runs[1].probe_series[k].value, meas_pre(t), meas_post(t)});
  }
  io::write_csv(dir / "comparison.csv", {"t", "sim_pre", "sim_post", "meas_pre", "meas_post"}, joined);

  std::vector<std::vector<Cell>> metrics;
  const DailySignal* meas[2] = {&meas_pre, &meas_post};
  for (std::size_t i = 0; i < 2; ++i) {
    const auto rep = discrepancy_report(runs[i].probe_series, *meas[i]);
    const auto& p = both[i]->cfg.physical;
    metrics.push_back({std::string(to_string(both[i]->cfg.tag)), p.kappa_per_day(), p.gamma, rep.relative_l2,
                       rep.mass_error});
    out << to_string(both[i]->cfg.tag) << " relative_l2 " << io::format_double(rep.relative_l2) << " mass_error "
        << io::format_double(rep.mass_error) << "\n";
  }
  io::write_csv(dir / "metrics.csv", {"scenario", "kappa", "gamma", "relative_l2", "mass_error"}, metrics);
  return exit_ok;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  std::string config;
  std::string out_dir;
  Overrides overrides;
  std::string param = "kappa";
  std::string measurements;
  std::string interval;
  std::string gamma_interval;
  int points = 20;
  std::size_t workers = 0;
};

inline int cmd_scan(const ScanArgs& a, std::ostream& out) {
  const auto s = load_scenario(a.config, a.overrides);
  const auto meas = measurements_for(s, a.measurements);
  const auto dir = output_dir(a.out_dir);
  const auto& m = s.signals.traffic;
  const auto& sol = s.signals.solar;

  if (a.param != "both") {
    const Parameter which = a.param == "kappa" ? Parameter::kappa : Parameter::gamma;
    const auto iv = parse_interval(a.interval, which == Parameter::kappa ? SearchInterval::kappa_default()
                                                                         : SearchInterval::gamma_default());
    ScenarioConfig cfg = s.cfg;
    if (which == Parameter::gamma) cfg.tag = ScenarioTag::post_asphalt;
    const auto pts = scan_objective(cfg, m, sol, meas, which, iv.grid(a.points), a.workers);
    io::write_csv(dir / "scan.csv", {"value", "discrepancy"}, scan_rows(pts));
    out << "points " << pts.size() << "\nlocal_minima " << count_local_minima(pts) << "\n";
    return exit_ok;
  }

  // Diagnostic (kappa, gamma) grid; the identification itself stays two-step.
  const auto kgrid = parse_interval(a.interval, SearchInterval::kappa_default()).grid(a.points);
  const auto ggrid = parse_interval(a.gamma_interval, SearchInterval::gamma_default()).grid(a.points);
  ScenarioConfig base = s.cfg;
  base.tag = ScenarioTag::post_asphalt;
  std::vector<ScenarioConfig> configs;
  for (double k : kgrid)
    for (double g : ggrid) configs.push_back(with_parameter(with_parameter(base, Parameter::kappa, k), Parameter::gamma, g));
  const auto d = parallel_map(
      configs.size(), [&](std::size_t i) { return relative_discrepancy(run_day(configs[i], m, sol).probe_series, meas); },
      a.workers);
  std::vector<std::vector<Cell>> rows;
  std::size_t best = 0;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    rows.push_back({configs[i].physical.kappa_per_day(), configs[i].physical.gamma, d[i]});
    if (d[i] < d[best]) best = i;
  }
  io::write_csv(dir / "scan2d.csv", {"kappa", "gamma", "discrepancy"}, rows);
  out << "points " << rows.size() << "\nbest_kappa " << io::format_double(configs[best].physical.kappa_per_day())
      << "\nbest_gamma " << io::format_double(configs[best].physical.gamma) << "\nbest_discrepancy "
      << io::format_double(d[best]) << "\n";
  return exit_ok;
}

// --- synthesize ------------------------------------------------------------

struct SynthesizeArgs {
  std::string config;
  std::string out_dir;
  Overrides overrides;
  std::optional<double> kappa;
  std::optional<double> gamma;
  std::string date = "2000-01-01";
  int every_minutes = 30;
  std::string output = "measurements.csv";
};

inline int cmd_synthesize(const SynthesizeArgs& a, std::ostream& out) {
  if (a.every_minutes < 1 || 1440 % a.every_minutes != 0)
    throw InvalidParameter("every-minutes", "must divide 1440");
  const auto s = load_scenario(a.config, a.overrides);
  ScenarioConfig cfg = s.cfg;
  if (a.kappa) cfg = with_parameter(cfg, Parameter::kappa, *a.kappa);
  if (a.gamma) cfg = with_parameter(cfg, Parameter::gamma, *a.gamma);
  const auto dir = output_dir(a.out_dir);
  const auto r = run_day(cfg, s.signals.traffic, s.signals.solar);
  const auto series = resample_series(r.probe_series, 1440 / a.every_minutes);
  io::write_measurements_csv(dir / a.output, a.date, series);
  out << "kappa " << io::format_double(cfg.physical.kappa_per_day()) << "\ngamma "
      << io::format_double(cfg.physical.gamma) << "\nwrote " << (dir / a.output).string() << "\n";
  return exit_ok;
}

inline std::string quote(const std::string& s) {
  std::string q = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') q += '\\';
    q += (c == '\n' ? ' ' : c);
  }
  return q + "\"";
}

inline int report(std::ostream& err, int code, const char* kind, const std::string& message) {
  err << "error code=" << code << " kind=" << kind << " message=" << quote(message) << "\n";
  return code;
}

}  // namespace detail

inline int run_cli(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  using namespace detail;
  CLI::App app{"Street-canyon NO reaction-diffusion simulator and parameter fitter", "noxsim"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "noxsim 1.0.0");

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "simulate one day and write probe.csv / mass.csv");
  c_sim->add_option("--config", sim.config, "scenario file")->required();
  c_sim->add_option("--out-dir", sim.out_dir, "output directory (default $NOXSIM_OUT_DIR or .)");
  c_sim->add_option("--snapshot-every", sim.snapshot_every, "write the field every N steps");
  c_sim->add_flag("--dump-operators", sim.dump_operators, "write M, K, B_R, B_Gamma as triplets");
  add_overrides(*c_sim, sim.overrides);

  FitArgs fit;
  auto* c_fit = app.add_subcommand("fit", "identify kappa (pre scenario) or gamma (post scenario)");
  c_fit->add_option("--config", fit.config, "scenario file")->required();
  c_fit->add_option("--out-dir", fit.out_dir, "output directory");
  c_fit->add_option("--stage", fit.stage, "kappa or gamma")->required()->check(CLI::IsMember({"kappa", "gamma"}));
  c_fit->add_option("--measurements", fit.measurements, "measurements CSV (default: from config)");
  c_fit->add_option("--interval", fit.interval, "search interval lo:hi");
  c_fit->add_option("--scan-points", fit.scan_points, "coarse scan size");
  c_fit->add_flag("--scan-only", fit.scan_only, "skip golden-section refinement");
  c_fit->add_option("--kappa", fit.kappa, "fixed kappa [1/(day UVI)] for the gamma stage");
  c_fit->add_option("--kappa-from", fit.kappa_from, "fit_summary.csv of a kappa stage");
  c_fit->add_option("--workers", fit.workers, "parallel scan workers (0 = all cores)");
  add_overrides(*c_fit, fit.overrides);

  CompareArgs cmp;
  auto* c_cmp = app.add_subcommand("compare", "run both scenarios against their measurements");
  c_cmp->add_option("--config-pre", cmp.config_pre, "pre_asphalt scenario")->required();
  c_cmp->add_option("--config-post", cmp.config_post, "post_asphalt scenario")->required();
  c_cmp->add_option("--out-dir", cmp.out_dir, "output directory");
  c_cmp->add_option("--kappa", cmp.kappa, "kappa [1/(day UVI)] for both runs");
  c_cmp->add_option("--gamma", cmp.gamma, "gamma for the post run");
  c_cmp->add_option("--kappa-from", cmp.kappa_from, "fit_summary.csv of a kappa stage");
  c_cmp->add_option("--gamma-from", cmp.gamma_from, "fit_summary.csv of a gamma stage");
  add_overrides(*c_cmp, cmp.overrides);

  ScanArgs scan;
  auto* c_scan = app.add_subcommand("scan", "discrepancy curve on a grid");
  c_scan->add_option("--config", scan.config, "scenario file")->required();
  c_scan->add_option("--out-dir", scan.out_dir, "output directory");
  c_scan->add_option("--param", scan.param, "kappa, gamma or both")->check(CLI::IsMember({"kappa", "gamma", "both"}));
  c_scan->add_option("--measurements", scan.measurements, "measurements CSV (default: from config)");
  c_scan->add_option("--interval", scan.interval, "grid lo:hi (kappa interval when --param both)");
  c_scan->add_option("--gamma-interval", scan.gamma_interval, "gamma grid lo:hi for --param both");
  c_scan->add_option("--points", scan.points, "grid points per axis");
  c_scan->add_option("--workers", scan.workers, "parallel workers (0 = all cores)");
  add_overrides(*c_scan, scan.overrides);

  SynthesizeArgs syn;
  auto* c_syn = app.add_subcommand("synthesize", "write a measurements CSV sampled from a simulated day");
  c_syn->add_option("--config", syn.config, "scenario file")->required();
  c_syn->add_option("--out-dir", syn.out_dir, "output directory");
  c_syn->add_option("--kappa", syn.kappa, "kappa [1/(day UVI)]");
  c_syn->add_option("--gamma", syn.gamma, "gamma");
  c_syn->add_option("--date", syn.date, "date written in the date column");
  c_syn->add_option("--every-minutes", syn.every_minutes, "sampling cadence");
  c_syn->add_option("--output", syn.output, "file name inside the output directory");
  add_overrides(*c_syn, syn.overrides);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return exit_ok;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return exit_ok;
  } catch (const CLI::CallForVersion& e) {
    out << e.what() << "\n";
    return exit_ok;
  } catch (const CLI::ParseError& e) {
    return report(err, exit_input, "usage", e.what());
  }

  try {
    if (*c_sim) return cmd_simulate(sim, out);
    if (*c_fit) return cmd_fit(fit, out);
    if (*c_cmp) return cmd_compare(cmp, out);
    if (*c_scan) return cmd_scan(scan, out);
    if (*c_syn) return cmd_synthesize(syn, out);
  } catch (const SolverFailure& e) {
    return report(err, exit_numeric, "solver", e.what());
  } catch (const InvalidParameter& e) {
    return report(err, exit_input, "parameter", e.what());
  } catch (const InputError& e) {
    return report(err, exit_input, "input", e.what());
  } catch (const Error& e) {
    return report(err, exit_numeric, "numeric", e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return report(err, exit_input, "io", e.what());
  } catch (const std::exception& e) {
    return report(err, exit_numeric, "internal", e.what());
  }
  return report(err, exit_input, "usage", "no subcommand");
}

}  // namespace noxsim::app
