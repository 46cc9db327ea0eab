#include "dce/attack.hpp"

#include "dce/errors.hpp"

namespace dce {

void check_attack_compatible(const AttackScenario& attack, PilotMode reverse_pilots) {
  if (attack.mode == AttackMode::known_pilot && reverse_pilots == PilotMode::random) {
    throw UsageError(
        "known-pilot attack is impossible against random reverse pilots: the attacker "
        "cannot know them");
  }
}

ComplexMatrix contaminate_reverse(const ReversePhaseTerms& clean, const ComplexMatrix& g,
                                  const AttackScenario& attack, const SystemConfig& cfg,
                                  const ReverseSignal& legit, RngStream& rng) {
  if (clean.signal.rows() != clean.noise.rows() || clean.signal.cols() != clean.noise.cols()) {
    throw DimensionError("contaminate_reverse: signal " + shape_string(clean.signal) +
                         " and noise " + shape_string(clean.noise) + " differ");
  }
  ComplexMatrix x0 = clean.signal + clean.noise;
  if (attack.mode == AttackMode::none) return x0;

  check_attack_compatible(attack, legit.mode);
  if (g.cols() != x0.rows()) {
    throw DimensionError("contaminate_reverse: wiretap channel " + shape_string(g) +
                         " does not reach " + std::to_string(x0.rows()) + " TX antennas");
  }
  const AttackSignal fake = build_attack_signal(cfg, attack.p0_bar, attack.mode, &legit.c0, rng);
  x0 += g.transpose() * fake.s0_bar;
  x0 += complex_gaussian(rng, static_cast<int>(x0.rows()), static_cast<int>(x0.cols()),
                         cfg.sigma0_sq);
  return x0;
}

}  // namespace dce
