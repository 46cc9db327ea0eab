#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dce/attack.hpp"
#include "dce/channel.hpp"
#include "dce/powalloc.hpp"

namespace dce {

enum class Scheme {
  wr,              // random reverse pilots, blind whitening at TX, WR estimators
  lmmse,           // fixed public reverse pilots, LMMSE everywhere
  wr_perfect_csi,  // TX knows H exactly; lower bound for the WR scheme
};

std::string_view to_string(Scheme s);
std::string_view to_string(AttackMode m);
/// Accepts the CLI spelling ("wr-perfect-csi") and the snake_case one.
Scheme parse_scheme(std::string_view text);
AttackMode parse_attack_mode(std::string_view text);

/// Per-trial NMSE of the LR's estimate of H and the UR's estimate of G.
struct TrialErrors {
  double lr = 0.0;
  double ur = 0.0;
};

/// One two-phase training round. Randomness is drawn from purpose-specific
/// forks of `rng`, so schemes sharing a stream see identical channels and
/// noise wherever they overlap.
TrialErrors run_trial(const SystemConfig& cfg, const PowerAllocation& allocation, Scheme scheme,
                      const AttackScenario& attack, const RngStream& rng);

struct ExperimentSpec {
  Scheme scheme = Scheme::wr;
  AttackScenario attack;
  std::vector<double> snr_db_grid{20.0};
  double gamma = 0.03;
  long long trials = 20000;
  std::uint64_t master_seed = 1;
  SystemConfig cfg;
  std::vector<int> t1_grid;        // when set, sweeps t1 at the single SNR
  std::vector<double> p0_bar_grid;  // when set, sweeps attack power at the single SNR
  int workers = 0;                 // 0: hardware concurrency; never changes results
};

enum class SweepKind { snr, t1, p0_bar };

/// Checks an ExperimentSpec's invariants and reports which dimension is swept.
SweepKind validate(const ExperimentSpec& spec);

struct ResultRow {
  double sweep_value = 0.0;
  Scheme scheme = Scheme::wr;
  AttackMode attack_mode = AttackMode::none;
  std::optional<double> p1;
  std::optional<double> sigma_a_sq;
  std::optional<double> p0;
  std::optional<double> nmse_lr_emp;
  std::optional<double> nmse_lr_cf;
  std::optional<double> nmse_ur_emp;
  std::optional<double> nmse_ur_cf;
  long long trials = 0;  // 0 marks a sweep point whose γ was infeasible
  std::uint64_t seed = 0;

  bool operator==(const ResultRow&) const = default;
};

/// Configuration at one sweep point (σ0² from SNR, γ, t1, attack power).
struct SweepPoint {
  double sweep_value = 0.0;
  SystemConfig cfg;
  AttackScenario attack;
};

std::vector<SweepPoint> sweep_points(const ExperimentSpec& spec);

/// Stream id of trial `trial` at sweep index `sweep`: sweep·2³² + trial.
std::uint64_t trial_stream_id(std::size_t sweep, long long trial);

/// Runs every sweep point: solves the allocation, runs `trials` independent
/// trials across `workers` threads and aggregates in trial order. Output is
/// bit-identical for any worker count.
std::vector<ResultRow> run_experiment(const ExperimentSpec& spec);

}  // namespace dce
