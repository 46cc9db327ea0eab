#pragma once

#include "dce/matcore.hpp"

namespace dce {

/// Scenario parameters shared by every stage. Defaults are the desk-scale
/// operating point: 4/2/2 antennas, 140-symbol phases, unit-variance
/// Rayleigh channels, 20 dB noise, unit power budget, UR threshold 0.03.
struct SystemConfig {
  int n_t = 4;  // TX antennas
  int n_l = 2;  // legitimate receiver antennas
  int n_u = 2;  // unauthorized receiver antennas
  int t0 = 140;  // reverse training length
  int t1 = 140;  // forward training length
  double sigma_h_sq = 1.0;
  double sigma_g_sq = 1.0;
  double sigma_b_sq = 1.0;
  double sigma0_sq = 0.01;
  double p_ave = 1.0;
  double gamma = 0.03;
};

/// Throws DimensionError/InfeasibleError when an invariant of SystemConfig
/// does not hold (n_t > n_l, t0 >= n_l, t1 >= n_t, non-negative variances,
/// positive budget and threshold).
void validate(const SystemConfig& cfg);

/// One block-fading realisation. Uplink channels are the transposes of these
/// downlink matrices; there is no second draw.
struct ChannelRealization {
  ComplexMatrix h;  // n_l × n_t, TX → LR
  ComplexMatrix g;  // n_u × n_t, TX → UR
  ComplexMatrix b;  // n_u × n_l, LR → UR (sampled, otherwise unused)
};

ChannelRealization sample_channels(const SystemConfig& cfg, RngStream& rng);

/// a = w·qᴴ with w = U_k·Σ_k (whitening) and q = V (unitary rotation).
struct WRDecomposition {
  ComplexMatrix w;
  ComplexMatrix q;
};

/// Whitening-rotation split of a tall (m ≥ k) matrix from its top-k
/// singular triplets. Decompose the transpose of a wide matrix instead.
WRDecomposition wr_decompose(const ComplexMatrix& a);

ComplexMatrix add_awgn(const ComplexMatrix& signal, double sigma0_sq, RngStream& rng);

}  // namespace dce
