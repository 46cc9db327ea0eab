#pragma once

#include "dce/channel.hpp"
#include "dce/training.hpp"

namespace dce {

struct AttackScenario {
  AttackMode mode = AttackMode::none;
  double p0_bar = 1.0;
};

/// Rejects a known-pilot attack against a scheme whose reverse pilots are
/// private to the LR.
void check_attack_compatible(const AttackScenario& attack, PilotMode reverse_pilots);

/// Clean reverse-phase components at the TX: Hᵀ·S0 and E0.
struct ReversePhaseTerms {
  ComplexMatrix signal;
  ComplexMatrix noise;
};

/// Received reverse block X0. With an attack, adds Gᵀ·S̄0 plus a second,
/// independent CN(0, σ0²) term F0, both drawn from `rng`.
ComplexMatrix contaminate_reverse(const ReversePhaseTerms& clean, const ComplexMatrix& g,
                                  const AttackScenario& attack, const SystemConfig& cfg,
                                  const ReverseSignal& legit, RngStream& rng);

}  // namespace dce
