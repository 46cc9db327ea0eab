#include "dce/training.hpp"

#include <cmath>
#include <string>

#include "dce/errors.hpp"

namespace dce {

namespace {

double pilot_scale(double power, int length, int antennas) {
  return std::sqrt(power * length / antennas);
}

}  // namespace

ReverseSignal build_reverse_signal(const SystemConfig& cfg, double p0, PilotMode mode,
                                   RngStream* rng) {
  if (!(p0 > 0)) throw InfeasibleError("reverse pilot power must be positive");
  if (cfg.t0 < cfg.n_l) {
    throw InfeasibleError("t0 (" + std::to_string(cfg.t0) + ") < n_l (" +
                          std::to_string(cfg.n_l) + "): reverse pilots cannot be orthogonal");
  }
  ReverseSignal out;
  out.c0 = orthonormal_rows(rng, cfg.n_l, cfg.t0, mode);
  out.s0 = pilot_scale(p0, cfg.t0, cfg.n_l) * out.c0;
  out.p0 = p0;
  out.mode = mode;
  return out;
}

ComplexMatrix build_an_basis(const ComplexMatrix& uplink_estimate) {
  const auto n_t = uplink_estimate.rows();
  const auto n_l = uplink_estimate.cols();
  if (n_t <= n_l) {
    throw DimensionError("build_an_basis: need more rows than columns, got " +
                         shape_string(uplink_estimate));
  }
  return left_null_basis(uplink_estimate, static_cast<int>(n_l)).conjugate();
}

ForwardSignal build_forward_signal(const SystemConfig& cfg, const ComplexMatrix& an_basis,
                                   double p1, double sigma_a_sq, RngStream& rng) {
  if (!(p1 > 0)) throw InfeasibleError("forward pilot power must be positive");
  if (sigma_a_sq < 0) throw InfeasibleError("AN variance must be non-negative");
  if (cfg.t1 < cfg.n_t) {
    throw InfeasibleError("t1 (" + std::to_string(cfg.t1) + ") < n_t (" +
                          std::to_string(cfg.n_t) + "): forward pilots cannot be orthogonal");
  }
  if (an_basis.rows() != cfg.n_t || an_basis.cols() != cfg.n_t - cfg.n_l) {
    throw DimensionError("build_forward_signal: AN basis " + shape_string(an_basis) +
                         " does not match n_t x (n_t - n_l)");
  }
  ForwardSignal out;
  out.c1 = orthonormal_rows(nullptr, cfg.n_t, cfg.t1, PilotMode::fixed);
  out.s1_pilot = pilot_scale(p1, cfg.t1, cfg.n_t) * out.c1;
  out.an_basis = an_basis;
  out.an = complex_gaussian(rng, cfg.n_t - cfg.n_l, cfg.t1, sigma_a_sq);
  out.s1 = out.s1_pilot + an_basis * out.an;
  out.p1 = p1;
  out.sigma_a_sq = sigma_a_sq;
  return out;
}

AttackSignal build_attack_signal(const SystemConfig& cfg, double p0_bar, AttackMode strategy,
                                 const ComplexMatrix* legit_c0, RngStream& rng) {
  if (p0_bar < 0) throw InfeasibleError("attack power must be non-negative");
  AttackSignal out;
  switch (strategy) {
    case AttackMode::known_pilot:
      if (legit_c0 == nullptr) {
        throw UsageError("known-pilot attack requires the legitimate reverse pilot");
      }
      out.c0_bar = *legit_c0;
      break;
    case AttackMode::guess:
      out.c0_bar = orthonormal_rows(&rng, cfg.n_l, cfg.t0, PilotMode::random);
      break;
    case AttackMode::none:
      throw UsageError("build_attack_signal called with attack mode 'none'");
  }
  out.p0_bar = p0_bar;
  out.s0_bar = pilot_scale(p0_bar, cfg.t0, cfg.n_l) * out.c0_bar;
  return out;
}

}  // namespace dce
