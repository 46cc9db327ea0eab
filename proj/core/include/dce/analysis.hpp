#pragma once

#include <optional>
#include <span>

#include "dce/channel.hpp"
#include "dce/matcore.hpp"

namespace dce {

struct NmseSummary {
  double empirical_mean = 0.0;
  long long trials = 0;
  std::optional<double> closed_form;
  std::optional<double> relative_gap;  // |emp − cf| / cf, when cf > 0
};

NmseSummary summarize(double empirical_mean, long long trials,
                      std::optional<double> closed_form);

/// ‖estimate − truth‖²_F / (rows·cols).
double empirical_nmse(const ComplexMatrix& estimate, const ComplexMatrix& truth);

/// Mean with Neumaier-compensated summation, so permuting the inputs moves
/// the result by at most a few ulps.
double compensated_mean(std::span<const double> values);

// Closed-form NMSE predictions for the WR scheme. All are first-order
// perturbation results; they drop O(σ0⁴) terms.

/// LR: n_t·σ0²/(p1·t1) · (1 + n_l·(n_t−n_l)·σ_a²/(p0·t0)).
double nmse_lr_closed(const SystemConfig& cfg, double p0, double p1, double sigma_a_sq);

/// UR: (n_t·σ0² + n_t·(n_t−n_l)·σ_a²·σ_G²) / (p1·t1).
double nmse_ur_closed(const SystemConfig& cfg, double p1, double sigma_a_sq);

/// LR under a guessed-pilot contamination attack of power p0_bar: the
/// unattacked value plus n_l·(n_t−n_l)·σ_a²/(p1·t1)·(n_t·σ0²/(p0_bar·t0) + n_u·σ_G²/(p0·t0)).
double nmse_lr_attack_closed(const SystemConfig& cfg, double p0, double p0_bar, double p1,
                             double sigma_a_sq);

/// Noise variance for a given SNR with unit power budget: 10^(−snr_db/10).
double snr_to_sigma0_sq(double snr_db);

}  // namespace dce
