#pragma once

#include "dce/channel.hpp"

namespace dce {

// Power split between forward pilots and artificial noise. Works in the
// reformulated variables
//   x = p1·t1/n_t,  y = (n_t − n_l)·σ_a²,  z = p0,
// minimising σ0²/x + y·n_l·σ0²/(x·z) subject to
//   σ0²/x + y·σ_G²/x ≥ γ   (UR NMSE floor)
//   z ≤ p_ave,  x·n_t/t1 + y ≤ p_ave.

struct GammaBounds {
  double lower = 0.0;  // n_t·σ0²/(p_ave·t1): the UR floor with no AN at all
  double upper = 0.0;  // (n_t − n_l)·p_ave
};

GammaBounds gamma_bounds(const SystemConfig& cfg);

struct XInterval {
  double x_min = 0.0;
  double x_max = 0.0;
};

/// σ0²/γ ≤ x ≤ (σ_G²·p_ave + σ0²)·t1/(γ·t1 + n_t·σ_G²). Throws
/// InfeasibleError naming the violated bound when γ is out of range.
XInterval feasible_x_interval(const SystemConfig& cfg);

/// A configuration whose γ has been checked against gamma_bounds.
class PowerAllocationProblem {
 public:
  explicit PowerAllocationProblem(const SystemConfig& cfg);

  const SystemConfig& cfg() const { return cfg_; }
  /// γ sits on (or within rounding of) one of its bounds; callers should warn.
  bool gamma_at_bound() const { return at_bound_; }

 private:
  SystemConfig cfg_;
  bool at_bound_ = false;
};

struct PowerAllocation {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  double p1 = 0.0;
  double sigma_a_sq = 0.0;
  double p0 = 0.0;
  double objective = 0.0;          // reformulated objective at (x, y, z)
  double predicted_nmse_lr = 0.0;  // nmse_lr_closed at (p0, p1, σ_a²)
  double predicted_nmse_ur = 0.0;  // nmse_ur_closed at (p1, σ_a²)
};

double reformulated_objective(const SystemConfig& cfg, double x, double y, double z);

/// Smallest y meeting the UR floor at a given x: (x·γ − σ0²)/σ_G², clamped at 0.
double ur_floor_y(const SystemConfig& cfg, double x);

/// z* = p_ave, y = ur_floor_y(x), then golden-section search on x over the
/// feasible interval (|Δx| ≤ 1e-9·x_max). The bracket endpoints are compared
/// against the interior result; ties go to the larger x.
PowerAllocation solve(const PowerAllocationProblem& problem);

/// Brute-force check: scans a grid_points × grid_points lattice over
/// x ∈ (0, p_ave·t1/n_t], y ∈ [0, p_ave] with z = p_ave, keeps lattice points
/// satisfying every constraint and returns the best one (ties: lowest x,
/// then lowest y).
PowerAllocation solve_grid_oracle(const PowerAllocationProblem& problem, int grid_points);

}  // namespace dce
