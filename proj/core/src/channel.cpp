#include "dce/channel.hpp"

#include <string>

#include "dce/errors.hpp"

namespace dce {

void validate(const SystemConfig& cfg) {
  if (cfg.n_t < 1 || cfg.n_l < 1 || cfg.n_u < 1) {
    throw DimensionError("antenna counts must be positive");
  }
  if (cfg.n_t <= cfg.n_l) {
    throw DimensionError("n_t (" + std::to_string(cfg.n_t) + ") must exceed n_l (" +
                         std::to_string(cfg.n_l) + ") to leave room for artificial noise");
  }
  if (cfg.t0 < cfg.n_l) {
    throw InfeasibleError("t0 (" + std::to_string(cfg.t0) +
                          ") too short for orthogonal reverse pilots; need t0 >= n_l");
  }
  if (cfg.t1 < cfg.n_t) {
    throw InfeasibleError("t1 (" + std::to_string(cfg.t1) +
                          ") too short for orthogonal forward pilots; need t1 >= n_t");
  }
  if (cfg.sigma_h_sq < 0 || cfg.sigma_g_sq < 0 || cfg.sigma_b_sq < 0 || cfg.sigma0_sq < 0) {
    throw InfeasibleError("channel and noise variances must be non-negative");
  }
  if (!(cfg.p_ave > 0)) throw InfeasibleError("p_ave must be positive");
  if (!(cfg.gamma > 0)) throw InfeasibleError("gamma must be positive");
}

ChannelRealization sample_channels(const SystemConfig& cfg, RngStream& rng) {
  validate(cfg);
  ChannelRealization ch;
  ch.h = complex_gaussian(rng, cfg.n_l, cfg.n_t, cfg.sigma_h_sq);
  ch.g = complex_gaussian(rng, cfg.n_u, cfg.n_t, cfg.sigma_g_sq);
  ch.b = complex_gaussian(rng, cfg.n_u, cfg.n_l, cfg.sigma_b_sq);
  return ch;
}

WRDecomposition wr_decompose(const ComplexMatrix& a) {
  if (a.rows() < a.cols()) {
    throw DimensionError("wr_decompose: expects a tall matrix, got " + shape_string(a));
  }
  const SvdResult s = svd(a);
  const Eigen::Index k = a.cols();
  WRDecomposition out;
  out.w = s.u.leftCols(k) * s.sigma.head(k).asDiagonal();
  out.q = s.v;
  return out;
}

ComplexMatrix add_awgn(const ComplexMatrix& signal, double sigma0_sq, RngStream& rng) {
  if (sigma0_sq < 0) throw std::invalid_argument("add_awgn: negative noise variance");
  if (sigma0_sq == 0) return signal;
  return signal + complex_gaussian(rng, static_cast<int>(signal.rows()),
                                   static_cast<int>(signal.cols()), sigma0_sq);
}

}  // namespace dce
