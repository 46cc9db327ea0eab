#include "dce/powalloc.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "dce/analysis.hpp"
#include "dce/errors.hpp"

namespace dce {

namespace {

constexpr double kBoundSlack = 1e-12;

PowerAllocation finish(const SystemConfig& cfg, double x, double y, double z) {
  PowerAllocation a;
  a.x = x;
  a.y = y;
  a.z = z;
  a.p1 = x * cfg.n_t / cfg.t1;
  a.sigma_a_sq = y / (cfg.n_t - cfg.n_l);
  a.p0 = z;
  a.objective = reformulated_objective(cfg, x, y, z);
  a.predicted_nmse_lr = nmse_lr_closed(cfg, a.p0, a.p1, a.sigma_a_sq);
  a.predicted_nmse_ur = nmse_ur_closed(cfg, a.p1, a.sigma_a_sq);
  return a;
}

}  // namespace

GammaBounds gamma_bounds(const SystemConfig& cfg) {
  return {cfg.n_t * cfg.sigma0_sq / (cfg.p_ave * cfg.t1), (cfg.n_t - cfg.n_l) * cfg.p_ave};
}

XInterval feasible_x_interval(const SystemConfig& cfg) {
  validate(cfg);
  const GammaBounds b = gamma_bounds(cfg);
  if (cfg.gamma < b.lower * (1.0 - kBoundSlack)) {
    std::ostringstream os;
    os << "gamma " << cfg.gamma << " below lower bound n_t*sigma0^2/(p_ave*t1) = " << b.lower;
    throw InfeasibleError(os.str());
  }
  if (cfg.gamma > b.upper * (1.0 + kBoundSlack)) {
    std::ostringstream os;
    os << "gamma " << cfg.gamma << " above upper bound (n_t-n_l)*p_ave = " << b.upper;
    throw InfeasibleError(os.str());
  }
  XInterval iv;
  iv.x_min = cfg.sigma0_sq / cfg.gamma;
  iv.x_max = (cfg.sigma_g_sq * cfg.p_ave + cfg.sigma0_sq) * cfg.t1 /
             (cfg.gamma * cfg.t1 + cfg.n_t * cfg.sigma_g_sq);
  // At the lower bound the interval degenerates to a point; rounding may
  // leave it a hair inverted.
  if (iv.x_max < iv.x_min) iv.x_max = iv.x_min;
  return iv;
}

PowerAllocationProblem::PowerAllocationProblem(const SystemConfig& cfg) : cfg_(cfg) {
  feasible_x_interval(cfg_);
  const GammaBounds b = gamma_bounds(cfg_);
  auto near = [](double a, double ref) { return std::abs(a - ref) <= 1e-9 * std::abs(ref); };
  at_bound_ = near(cfg_.gamma, b.lower) || near(cfg_.gamma, b.upper);
}

double reformulated_objective(const SystemConfig& cfg, double x, double y, double z) {
  if (cfg.sigma0_sq == 0) return 0.0;
  return cfg.sigma0_sq / x + y * cfg.n_l * cfg.sigma0_sq / (x * z);
}

double ur_floor_y(const SystemConfig& cfg, double x) {
  // Without a wiretap channel AN cannot raise the UR error; spend nothing on it.
  if (cfg.sigma_g_sq == 0) return 0.0;
  return std::max(0.0, (x * cfg.gamma - cfg.sigma0_sq) / cfg.sigma_g_sq);
}

PowerAllocation solve(const PowerAllocationProblem& problem) {
  const SystemConfig& cfg = problem.cfg();
  const XInterval iv = feasible_x_interval(cfg);
  const double z = cfg.p_ave;
  auto f = [&](double x) { return reformulated_objective(cfg, x, ur_floor_y(cfg, x), z); };

  const double tol = 1e-9 * iv.x_max;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double lo = iv.x_min;
  double hi = iv.x_max;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c);
  double fd = f(d);
  while (hi - lo > tol) {
    if (fc < fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }

  // Ascending order so that `<=` hands ties to the larger x.
  const std::array<double, 3> candidates{iv.x_min, 0.5 * (lo + hi), iv.x_max};
  double best_x = candidates.front();
  double best_f = std::numeric_limits<double>::infinity();
  for (const double x : candidates) {
    if (x <= 0) continue;
    const double fx = f(x);
    if (fx <= best_f) {
      best_f = fx;
      best_x = x;
    }
  }
  return finish(cfg, best_x, ur_floor_y(cfg, best_x), z);
}

PowerAllocation solve_grid_oracle(const PowerAllocationProblem& problem, int grid_points) {
  if (grid_points < 100) throw UsageError("solve_grid_oracle: need at least 100 grid points");
  const SystemConfig& cfg = problem.cfg();
  const double z = cfg.p_ave;
  const double x_box = cfg.p_ave * cfg.t1 / cfg.n_t;
  const double y_box = cfg.p_ave;

  bool found = false;
  double best_f = std::numeric_limits<double>::infinity();
  double best_x = 0.0;
  double best_y = 0.0;
  for (int i = 1; i <= grid_points; ++i) {
    const double x = x_box * i / grid_points;
    for (int j = 0; j <= grid_points; ++j) {
      const double y = y_box * j / grid_points;
      const double ur = cfg.sigma0_sq / x + y * cfg.sigma_g_sq / x;
      if (ur < cfg.gamma * (1.0 - kBoundSlack)) continue;
      if (x * cfg.n_t / cfg.t1 + y > cfg.p_ave * (1.0 + kBoundSlack)) continue;
      const double fx = reformulated_objective(cfg, x, y, z);
      if (fx < best_f) {
        best_f = fx;
        best_x = x;
        best_y = y;
        found = true;
      }
    }
  }
  if (!found) {
    throw InfeasibleError("solve_grid_oracle: no feasible point on a " +
                          std::to_string(grid_points) + "-point grid");
  }
  return finish(cfg, best_x, best_y, z);
}

}  // namespace dce
