#pragma once

#include "dce/channel.hpp"
#include "dce/matcore.hpp"

namespace dce {

/// Reverse-phase pilot sent by the LR: s0 = √(p0·t0/n_l)·c0.
struct ReverseSignal {
  ComplexMatrix s0;
  ComplexMatrix c0;
  double p0 = 0.0;
  PilotMode mode = PilotMode::fixed;
};

/// Forward-phase training: s1 = s1_pilot + an_basis·an.
struct ForwardSignal {
  ComplexMatrix s1;
  ComplexMatrix s1_pilot;  // √(p1·t1/n_t)·c1, known to every receiver
  ComplexMatrix c1;
  ComplexMatrix an_basis;  // n_t × (n_t − n_l)
  ComplexMatrix an;        // (n_t − n_l) × t1
  double p1 = 0.0;
  double sigma_a_sq = 0.0;
};

enum class AttackMode { none, known_pilot, guess };

/// Pilot injected by the UR during the reverse phase.
struct AttackSignal {
  ComplexMatrix s0_bar;
  ComplexMatrix c0_bar;
  double p0_bar = 0.0;
};

/// `fixed` mode uses publicly known DFT rows (the LMMSE scheme); `random`
/// draws fresh orthonormal rows from `rng` that only the LR knows.
ReverseSignal build_reverse_signal(const SystemConfig& cfg, double p0, PilotMode mode,
                                   RngStream* rng);

/// Artificial-noise basis N with orthonormal columns and Nᵀ·uplink = 0.
///
/// The orthogonality is bilinear rather than Hermitian: the uplink estimate
/// approximates Hᵀ, so for the AN to vanish on the downlink we need
/// H·N = (Nᵀ·Hᵀ)ᵀ = 0. Built as the conjugate of the Hermitian left null basis.
ComplexMatrix build_an_basis(const ComplexMatrix& uplink_estimate);

/// Forward pilots use fixed DFT rows; AN entries are i.i.d. CN(0, sigma_a_sq).
ForwardSignal build_forward_signal(const SystemConfig& cfg, const ComplexMatrix& an_basis,
                                   double p1, double sigma_a_sq, RngStream& rng);

/// `known_pilot` replays legit_c0 (the attacker knows the public pilots);
/// `guess` draws independent orthonormal rows.
AttackSignal build_attack_signal(const SystemConfig& cfg, double p0_bar, AttackMode strategy,
                                 const ComplexMatrix* legit_c0, RngStream& rng);

}  // namespace dce
