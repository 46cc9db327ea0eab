#include "dce/analysis.hpp"

#include <cmath>

#include "dce/errors.hpp"

namespace dce {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0)) throw InfeasibleError(std::string(name) + " must be positive");
}

}  // namespace

NmseSummary summarize(double empirical_mean, long long trials,
                      std::optional<double> closed_form) {
  NmseSummary s{empirical_mean, trials, closed_form, std::nullopt};
  if (closed_form && *closed_form > 0) {
    s.relative_gap = std::abs(empirical_mean - *closed_form) / *closed_form;
  }
  return s;
}

double empirical_nmse(const ComplexMatrix& estimate, const ComplexMatrix& truth) {
  if (estimate.rows() != truth.rows() || estimate.cols() != truth.cols()) {
    throw DimensionError("empirical_nmse: shape mismatch " + shape_string(estimate) + " vs " +
                         shape_string(truth));
  }
  return (estimate - truth).squaredNorm() / static_cast<double>(truth.size());
}

double compensated_mean(std::span<const double> values) {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  double carry = 0.0;
  for (const double v : values) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  return (sum + carry) / static_cast<double>(values.size());
}

double nmse_lr_closed(const SystemConfig& cfg, double p0, double p1, double sigma_a_sq) {
  require_positive(p0, "p0");
  require_positive(p1, "p1");
  const double forward = cfg.n_t * cfg.sigma0_sq / (p1 * cfg.t1);
  const double leakage = cfg.n_l * (cfg.n_t - cfg.n_l) * sigma_a_sq / (p0 * cfg.t0);
  return forward + leakage * forward;
}

double nmse_ur_closed(const SystemConfig& cfg, double p1, double sigma_a_sq) {
  require_positive(p1, "p1");
  return (cfg.n_t * cfg.sigma0_sq +
          cfg.n_t * (cfg.n_t - cfg.n_l) * sigma_a_sq * cfg.sigma_g_sq) /
         (p1 * cfg.t1);
}

double nmse_lr_attack_closed(const SystemConfig& cfg, double p0, double p0_bar, double p1,
                             double sigma_a_sq) {
  require_positive(p0_bar, "p0_bar");
  const double clean = nmse_lr_closed(cfg, p0, p1, sigma_a_sq);
  const double an_gain = cfg.n_l * (cfg.n_t - cfg.n_l) * sigma_a_sq / (p1 * cfg.t1);
  const double injected = cfg.n_t * cfg.sigma0_sq / (p0_bar * cfg.t0) +
                          cfg.n_u * cfg.sigma_g_sq / (p0 * cfg.t0);
  return clean + an_gain * injected;
}

double snr_to_sigma0_sq(double snr_db) { return std::pow(10.0, -snr_db / 10.0); }

}  // namespace dce
