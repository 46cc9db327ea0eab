#pragma once

#include <complex>
#include <cstdint>
#include <random>
#include <string>

#include <Eigen/Dense>

namespace dce {

using Complex = std::complex<double>;

/// Dense complex matrix carrying every channel, signal and estimate.
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Throws NumericalError naming `what` if any entry is NaN or infinite.
void require_finite(const ComplexMatrix& m, const std::string& what);

std::string shape_string(const ComplexMatrix& m);

/// Seeded source of randomness. Identical (master_seed, stream_id) pairs
/// produce identical sequences; one stream per concurrent task.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

  /// Independent child stream for a named purpose. Forking does not advance
  /// the parent, so sibling forks stay aligned across schemes that consume
  /// different amounts of randomness.
  RngStream fork(std::uint64_t salt) const;

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  double normal(double stddev);

 private:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t salt);

  std::uint64_t master_seed_;
  std::uint64_t stream_id_;
  std::uint64_t salt_ = 0;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Singular value decomposition a = u·diag(sigma)·vᴴ with full square u, v.
///
/// Phase convention: the first entry of each column of u whose magnitude
/// exceeds a relative threshold is rotated to be real and non-negative; the
/// same phase is absorbed into the matching column of v so the product is
/// unchanged. Columns of u and v without a singular value partner are
/// normalised the same way independently.
struct SvdResult {
  ComplexMatrix u;
  RealVector sigma;  // length min(rows, cols), descending
  ComplexMatrix v;
};

SvdResult svd(const ComplexMatrix& a);

/// Orthonormal basis N (m×(m−rank)) of the complement of the top-`rank`
/// left singular subspace of `a`, so Nᴴ·U_r = 0 and Nᴴ·N = I.
ComplexMatrix left_null_basis(const ComplexMatrix& a, int rank);

/// i.i.d. CN(0, variance) entries: real and imaginary parts each N(0, variance/2).
ComplexMatrix complex_gaussian(RngStream& rng, int rows, int cols, double variance);

enum class PilotMode { fixed, random };

/// Matrix with orthonormal rows (C·Cᴴ = I). `fixed` takes the first n_rows
/// rows of the unitary n_cols-point DFT; `random` orthonormalises a complex
/// Gaussian draw. `rng` is only consumed in random mode.
ComplexMatrix orthonormal_rows(RngStream* rng, int n_rows, int n_cols, PilotMode mode);

}  // namespace dce
