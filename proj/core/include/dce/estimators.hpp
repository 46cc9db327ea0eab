#pragma once

#include <optional>

#include "dce/matcore.hpp"
#include "dce/training.hpp"

namespace dce {

enum class UplinkKind { lmmse_channel, blind_whitening };

/// TX-side estimate in uplink orientation (n_t × n_l): either Ĥ0 ≈ Hᵀ or the
/// blind whitening factor Ŵ0. Only its column space feeds the AN basis.
struct UplinkEstimate {
  ComplexMatrix matrix;
  UplinkKind kind = UplinkKind::lmmse_channel;
};

/// Receiver-side downlink estimate (rx × n_t). WR estimators also return the
/// whitening and unitary rotation factors the estimate was built from.
struct ChannelEstimate {
  ComplexMatrix matrix;
  std::optional<ComplexMatrix> whitening;
  std::optional<ComplexMatrix> rotation;
};

/// LMMSE estimate of the uplink channel from known reverse pilots.
/// Evaluates σ_H²(σ_H²·S0S0ᴴ + σ0²·I)⁻¹·S0·X0ᴴ (≈ H*, n_l × n_t) and returns
/// its conjugate transpose so the result approximates Hᵀ.
UplinkEstimate lmmse_uplink(const ComplexMatrix& x0, const ReverseSignal& s0,
                            double sigma_h_sq, double sigma0_sq);

/// LMMSE downlink estimate σ²·X1·S̃1ᴴ(σ²·S̃1S̃1ᴴ + σ0²·I)⁻¹ using only the
/// pilot part of the forward signal; artificial noise is not modelled by the
/// receiver. `prior_var` is σ_H² at the LR and σ_G² at the UR.
ChannelEstimate lmmse_downlink(const ComplexMatrix& x1, const ForwardSignal& s1,
                               double prior_var, double sigma0_sq);

/// Blind estimate of the whitening factor of Hᵀ from the sample
/// autocorrelation X0X0ᴴ/((p0/n_l)·t0), truncated to its top n_l triplets.
UplinkEstimate blind_whitening_tx(const ComplexMatrix& x0, double p0, int t0, int n_l);

enum class ProcrustesOrder { uv, vu };

/// Unitary polar factor of `cross`: U·Vᴴ (uv) or V·Uᴴ (vu) from its SVD.
/// Solves min ‖Q·A − B‖_F over unitary Q when cross is the correlation of
/// the two sides.
ComplexMatrix procrustes_rotation(const ComplexMatrix& cross, ProcrustesOrder order);

/// Whitening-rotation estimate of H at the LR from the forward phase:
///   X̂_W = X1·S̃1ᴴ/α,  Ŵ1 = V*·Σᵀ,
///   X̂_Q = X1*·S̃1ᵀ·Ŵ1/α,  Q̂1 = polar(X̂_Q),
///   Ĥ1 = Q̂1*·Ŵ1ᵀ,  with α = p1·t1/n_t.
ChannelEstimate wr_estimate_lr(const ComplexMatrix& x1, const ComplexMatrix& s1_pilot,
                               double p1, int t1, int n_t);

/// Whitening-rotation estimate of G at the UR:
///   Ŷ_M = Y1·S̃1ᴴ/α,  M̂ = U·Σ,  Ŷ_R = M̂ᴴ·Ŷ_M,  R̂ = V·Uᴴ of Ŷ_R,  Ĝ = M̂·R̂ᴴ.
ChannelEstimate wr_estimate_ur(const ComplexMatrix& y1, const ComplexMatrix& s1_pilot,
                               double p1, int t1, int n_t);

}  // namespace dce
