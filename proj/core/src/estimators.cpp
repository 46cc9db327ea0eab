#include "dce/estimators.hpp"

#include <string>

#include "dce/errors.hpp"

namespace dce {

namespace {

// (prior·gram + noise·I)⁻¹·rhs with a pseudo-inverse fallback for the
// noiseless, rank-deficient case.
ComplexMatrix regularised_solve(const ComplexMatrix& gram, double prior, double noise,
                                const ComplexMatrix& rhs) {
  const auto n = gram.rows();
  const ComplexMatrix lhs = prior * gram + noise * ComplexMatrix::Identity(n, n);
  Eigen::LLT<ComplexMatrix> llt(lhs);
  if (llt.info() == Eigen::Success) {
    ComplexMatrix out = llt.solve(rhs);
    if (out.allFinite()) return out;
  }
  Eigen::CompleteOrthogonalDecomposition<ComplexMatrix> cod(lhs);
  return cod.pseudoInverse() * rhs;
}

// Σᵀ of an m×n SVD laid out as an n×m real matrix.
Eigen::MatrixXd sigma_transposed(const RealVector& sigma, Eigen::Index m, Eigen::Index n) {
  Eigen::MatrixXd st = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index i = 0; i < sigma.size(); ++i) st(i, i) = sigma(i);
  return st;
}

void require_signal_pair(const ComplexMatrix& rx, const ComplexMatrix& pilot, int n_t,
                         const char* who) {
  if (pilot.rows() != n_t || rx.cols() != pilot.cols()) {
    throw DimensionError(std::string(who) + ": received " + shape_string(rx) +
                         " and pilot " + shape_string(pilot) + " disagree (n_t = " +
                         std::to_string(n_t) + ")");
  }
}

}  // namespace

UplinkEstimate lmmse_uplink(const ComplexMatrix& x0, const ReverseSignal& s0,
                            double sigma_h_sq, double sigma0_sq) {
  if (x0.cols() != s0.s0.cols()) {
    throw DimensionError("lmmse_uplink: received " + shape_string(x0) + " vs pilot " +
                         shape_string(s0.s0));
  }
  require_finite(x0, "lmmse_uplink input");
  const ComplexMatrix gram = s0.s0 * s0.s0.adjoint();
  const ComplexMatrix conj_estimate =
      sigma_h_sq * regularised_solve(gram, sigma_h_sq, sigma0_sq, s0.s0 * x0.adjoint());
  return {conj_estimate.adjoint(), UplinkKind::lmmse_channel};
}

ChannelEstimate lmmse_downlink(const ComplexMatrix& x1, const ForwardSignal& s1,
                               double prior_var, double sigma0_sq) {
  const ComplexMatrix& pilot = s1.s1_pilot;
  if (x1.cols() != pilot.cols()) {
    throw DimensionError("lmmse_downlink: received " + shape_string(x1) + " vs pilot " +
                         shape_string(pilot));
  }
  require_finite(x1, "lmmse_downlink input");
  const ComplexMatrix gram = pilot * pilot.adjoint();
  const ComplexMatrix conj_estimate =
      prior_var * regularised_solve(gram, prior_var, sigma0_sq, pilot * x1.adjoint());
  return {conj_estimate.adjoint(), std::nullopt, std::nullopt};
}

UplinkEstimate blind_whitening_tx(const ComplexMatrix& x0, double p0, int t0, int n_l) {
  if (t0 < n_l) {
    throw InfeasibleError("blind_whitening_tx: t0 (" + std::to_string(t0) + ") < n_l (" +
                          std::to_string(n_l) + ")");
  }
  if (x0.cols() != t0 || x0.rows() < n_l) {
    throw DimensionError("blind_whitening_tx: received " + shape_string(x0) +
                         " inconsistent with t0 = " + std::to_string(t0));
  }
  if (!(p0 > 0)) throw InfeasibleError("blind_whitening_tx: p0 must be positive");
  const double norm = (p0 / n_l) * t0;
  const ComplexMatrix autocorr = (x0 * x0.adjoint()) / norm;
  const SvdResult s = svd(autocorr);
  const RealVector root = s.sigma.head(n_l).cwiseSqrt();
  return {s.u.leftCols(n_l) * root.asDiagonal(), UplinkKind::blind_whitening};
}

ComplexMatrix procrustes_rotation(const ComplexMatrix& cross, ProcrustesOrder order) {
  const SvdResult s = svd(cross);
  const Eigen::Index r = s.sigma.size();
  if (order == ProcrustesOrder::uv) return s.u.leftCols(r) * s.v.leftCols(r).adjoint();
  return s.v.leftCols(r) * s.u.leftCols(r).adjoint();
}

ChannelEstimate wr_estimate_lr(const ComplexMatrix& x1, const ComplexMatrix& s1_pilot,
                               double p1, int t1, int n_t) {
  require_signal_pair(x1, s1_pilot, n_t, "wr_estimate_lr");
  if (!(p1 > 0)) throw InfeasibleError("wr_estimate_lr: p1 must be positive");
  const double alpha = p1 / n_t * t1;

  const ComplexMatrix x_w = x1 * s1_pilot.adjoint() / alpha;
  const SvdResult sw = svd(x_w);
  if (!(sw.sigma(0) > 0)) {
    throw NumericalError("wr_estimate_lr: received pilot correlation " + shape_string(x_w) +
                         " is identically zero");
  }
  const ComplexMatrix w1 =
      sw.v.conjugate() * sigma_transposed(sw.sigma, x_w.rows(), x_w.cols()).cast<Complex>();

  const ComplexMatrix x_q = x1.conjugate() * s1_pilot.transpose() * w1 / alpha;
  const ComplexMatrix q1 = procrustes_rotation(x_q, ProcrustesOrder::uv);

  ChannelEstimate out;
  out.matrix = q1.conjugate() * w1.transpose();
  out.whitening = w1;
  out.rotation = q1;
  return out;
}

ChannelEstimate wr_estimate_ur(const ComplexMatrix& y1, const ComplexMatrix& s1_pilot,
                               double p1, int t1, int n_t) {
  require_signal_pair(y1, s1_pilot, n_t, "wr_estimate_ur");
  if (!(p1 > 0)) throw InfeasibleError("wr_estimate_ur: p1 must be positive");
  const double alpha = p1 / n_t * t1;

  const ComplexMatrix y_m = y1 * s1_pilot.adjoint() / alpha;
  const SvdResult sm = svd(y_m);
  if (!(sm.sigma(0) > 0)) {
    throw NumericalError("wr_estimate_ur: received pilot correlation " + shape_string(y_m) +
                         " is identically zero");
  }
  const Eigen::MatrixXd sigma =
      sigma_transposed(sm.sigma, y_m.rows(), y_m.cols()).transpose();
  const ComplexMatrix m_hat = sm.u * sigma.cast<Complex>();

  const ComplexMatrix y_r = m_hat.adjoint() * y_m;
  const ComplexMatrix r_hat = procrustes_rotation(y_r, ProcrustesOrder::vu);

  ChannelEstimate out;
  out.matrix = m_hat * r_hat.adjoint();
  out.whitening = m_hat;
  out.rotation = r_hat;
  return out;
}

}  // namespace dce
