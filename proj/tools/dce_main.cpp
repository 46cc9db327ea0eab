#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dce/analysis.hpp"
#include "dce/errors.hpp"
#include "dce/experiment_io.hpp"
#include "dce/powalloc.hpp"
#include "dce/simulation.hpp"

namespace {

enum ExitCode { kOk = 0, kUsage = 1, kInfeasible = 2, kIo = 3, kNumerical = 4 };

struct SimulateArgs {
  std::string scheme;
  std::string attack;
  double p0_bar = 1.0;
  double gamma = 0.0;
  std::vector<double> snr_db;
  std::vector<int> t1_grid;
  std::vector<double> p0_bar_grid;
  long long trials = 0;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string config;
  std::string out;
};

struct AllocArgs {
  double gamma = 0.03;
  double snr_db = 20.0;
  std::string config;
  bool verify = false;
  int grid = 2000;
};

struct ClosedFormArgs {
  double gamma = 0.03;
  double snr_db = 20.0;
  double p0_bar = 1.0;
};

struct ExperimentArgs {
  std::string figure;
  std::string out;
  long long trials = 20000;
  std::uint64_t seed = 1;
  int workers = 0;
};

void print_value(const char* name, double v) { std::printf("%-22s %.10g\n", name, v); }

dce::SystemConfig base_config(const std::string& config_path) {
  if (config_path.empty()) return {};
  return dce::load_experiment_spec(config_path).cfg;
}

dce::PowerAllocationProblem make_problem(dce::SystemConfig cfg, double gamma, double snr_db) {
  cfg.gamma = gamma;
  cfg.sigma0_sq = dce::snr_to_sigma0_sq(snr_db);
  dce::PowerAllocationProblem problem(cfg);
  if (problem.gamma_at_bound()) {
    std::fprintf(stderr, "warning: gamma %.10g sits on a feasibility bound\n", gamma);
  }
  return problem;
}

int run_simulate(const SimulateArgs& a, const CLI::App& cmd) {
  dce::ExperimentSpec spec;
  if (!a.config.empty()) spec = dce::load_experiment_spec(a.config);
  auto given = [&](const char* name) { return cmd.count(name) > 0; };
  if (given("--scheme")) spec.scheme = dce::parse_scheme(a.scheme);
  if (given("--attack")) spec.attack.mode = dce::parse_attack_mode(a.attack);
  if (given("--p0-bar")) spec.attack.p0_bar = a.p0_bar;
  if (given("--gamma")) spec.gamma = a.gamma;
  if (given("--snr-db")) spec.snr_db_grid = a.snr_db;
  if (given("--t1-grid")) spec.t1_grid = a.t1_grid;
  if (given("--p0-bar-grid")) spec.p0_bar_grid = a.p0_bar_grid;
  if (given("--trials")) spec.trials = a.trials;
  if (given("--seed")) spec.master_seed = a.seed;
  if (given("--workers")) spec.workers = a.workers;
  spec.cfg.gamma = spec.gamma;
  for (const dce::SweepPoint& point : dce::sweep_points(spec)) {
    try {
      if (dce::PowerAllocationProblem(point.cfg).gamma_at_bound()) {
        std::fprintf(stderr, "warning: gamma %.10g sits on a feasibility bound at sweep value %g\n",
                     spec.gamma, point.sweep_value);
      }
    } catch (const dce::InfeasibleError&) {
      // Reported per row below.
    }
  }

  const std::vector<dce::ResultRow> rows = dce::run_experiment(spec);
  if (a.out.empty() || a.out == "-") {
    dce::write_csv(rows, std::cout);
  } else {
    dce::emit_csv(rows, a.out);
  }
  for (const dce::ResultRow& r : rows) {
    if (r.trials == 0) {
      std::fprintf(stderr, "warning: sweep value %g is infeasible for gamma %g\n",
                   r.sweep_value, spec.gamma);
    }
  }
  return kOk;
}

int run_power_alloc(const AllocArgs& a) {
  const dce::PowerAllocationProblem problem =
      make_problem(base_config(a.config), a.gamma, a.snr_db);
  const dce::PowerAllocation s = dce::solve(problem);
  print_value("x*", s.x);
  print_value("y*", s.y);
  print_value("z*", s.z);
  print_value("P1", s.p1);
  print_value("sigma_a^2", s.sigma_a_sq);
  print_value("objective", s.objective);
  print_value("predicted NMSE_L", s.predicted_nmse_lr);
  print_value("predicted NMSE_U", s.predicted_nmse_ur);
  if (a.verify) {
    const dce::PowerAllocation g = dce::solve_grid_oracle(problem, a.grid);
    const double gap = (s.objective - g.objective) / g.objective;
    std::printf("grid oracle (%d x %d):\n", a.grid, a.grid);
    print_value("  x", g.x);
    print_value("  y", g.y);
    print_value("  objective", g.objective);
    print_value("  relative gap", gap);
    std::printf("  %s\n", gap <= 5e-3 ? "consistent" : "MISMATCH");
    if (gap > 5e-3) return kNumerical;
  }
  return kOk;
}

int run_closed_form(const ClosedFormArgs& a) {
  const dce::PowerAllocationProblem problem = make_problem({}, a.gamma, a.snr_db);
  const dce::PowerAllocation s = dce::solve(problem);
  const dce::SystemConfig& cfg = problem.cfg();
  print_value("P0", s.p0);
  print_value("P1", s.p1);
  print_value("sigma_a^2", s.sigma_a_sq);
  print_value("NMSE_L", dce::nmse_lr_closed(cfg, s.p0, s.p1, s.sigma_a_sq));
  print_value("NMSE_U", dce::nmse_ur_closed(cfg, s.p1, s.sigma_a_sq));
  print_value("NMSE_L attacked",
              dce::nmse_lr_attack_closed(cfg, s.p0, a.p0_bar, s.p1, s.sigma_a_sq));
  return kOk;
}

int run_figure(const ExperimentArgs& a) {
  const std::filesystem::path dir(a.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw dce::IoError("cannot create '" + dir.string() + "': " + ec.message());

  const std::vector<dce::FigureOutput> outputs =
      dce::figure_preset(a.figure, a.trials, a.seed, a.workers);
  const std::filesystem::path provenance_path = dir / (a.figure + "_provenance.txt");
  std::ofstream provenance(provenance_path);
  if (!provenance) throw dce::IoError("cannot open '" + provenance_path.string() + "'");
  provenance << "figure " << a.figure << "\nmaster_seed " << a.seed << "\ntrials " << a.trials
             << '\n';

  for (const dce::FigureOutput& output : outputs) {
    std::vector<dce::ResultRow> rows;
    for (const dce::ExperimentSpec& spec : output.runs) {
      const std::vector<dce::ResultRow> part = dce::run_experiment(spec);
      rows.insert(rows.end(), part.begin(), part.end());
      provenance << "\n[" << output.file << "]\n" << dce::experiment_spec_to_json(spec) << '\n';
    }
    dce::emit_csv(rows, dir / output.file);
    std::printf("wrote %s (%zu rows)\n", (dir / output.file).string().c_str(), rows.size());
  }
  provenance.flush();
  if (!provenance) throw dce::IoError("failed writing '" + provenance_path.string() + "'");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discriminatory channel estimation simulator"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo NMSE for one scheme");
  simulate->add_option("--scheme", sim.scheme, "wr | lmmse | wr-perfect-csi");
  simulate->add_option("--attack", sim.attack, "none | known-pilot | guess");
  simulate->add_option("--p0-bar", sim.p0_bar, "attacker reverse power");
  simulate->add_option("--gamma", sim.gamma, "UR NMSE threshold");
  simulate->add_option("--snr-db", sim.snr_db, "SNR grid in dB")->delimiter(',');
  simulate->add_option("--t1-grid", sim.t1_grid, "sweep forward training length")
      ->delimiter(',');
  simulate->add_option("--p0-bar-grid", sim.p0_bar_grid, "sweep attacker power")
      ->delimiter(',');
  simulate->add_option("--trials", sim.trials, "trials per sweep point");
  simulate->add_option("--seed", sim.seed, "master seed");
  simulate->add_option("--workers", sim.workers, "worker threads (0: all cores)");
  simulate->add_option("--config", sim.config, "JSON experiment config");
  simulate->add_option("--out", sim.out, "CSV output path (default stdout)");

  AllocArgs alloc;
  CLI::App* power = app.add_subcommand("power-alloc", "Solve the power allocation");
  power->add_option("--gamma", alloc.gamma, "UR NMSE threshold");
  power->add_option("--snr-db", alloc.snr_db, "SNR in dB");
  power->add_option("--config", alloc.config, "JSON experiment config (cfg is used)");
  power->add_flag("--verify", alloc.verify, "cross-check against the grid oracle");
  power->add_option("--grid", alloc.grid, "grid oracle points per axis");

  ClosedFormArgs cf;
  CLI::App* closed = app.add_subcommand("closed-form", "Closed-form NMSE predictions");
  closed->add_option("--gamma", cf.gamma, "UR NMSE threshold");
  closed->add_option("--snr-db", cf.snr_db, "SNR in dB");
  closed->add_option("--p0-bar", cf.p0_bar, "attacker reverse power");

  ExperimentArgs exp;
  CLI::App* experiment = app.add_subcommand("experiment", "Regenerate a figure's data");
  experiment->add_option("figure", exp.figure, "fig2 | fig3a | fig3b | fig3c | fig4a | fig4b | fig4c")
      ->required()
      ->check(CLI::IsMember(dce::figure_names()));
  experiment->add_option("--out", exp.out, "output directory")->required();
  experiment->add_option("--trials", exp.trials, "trials per sweep point");
  experiment->add_option("--seed", exp.seed, "master seed");
  experiment->add_option("--workers", exp.workers, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*simulate) return run_simulate(sim, *simulate);
    if (*power) return run_power_alloc(alloc);
    if (*closed) return run_closed_form(cf);
    if (*experiment) return run_figure(exp);
  } catch (const dce::InfeasibleError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const dce::DimensionError& e) {
    std::fprintf(stderr, "infeasible: %s\n", e.what());
    return kInfeasible;
  } catch (const dce::IoError& e) {
    std::fprintf(stderr, "i/o error: %s\n", e.what());
    return kIo;
  } catch (const dce::NumericalError& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return kNumerical;
  } catch (const dce::UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kUsage;
  }
  return kUsage;
}
