#include "dce/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "dce/errors.hpp"

namespace dce {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Chained splitmix64 folds the three words into one seed. seed_seq would be
// better mixed but costs more than a whole trial's worth of draws.
std::mt19937_64 make_engine(std::uint64_t master, std::uint64_t stream, std::uint64_t salt) {
  const std::uint64_t seed = splitmix64(splitmix64(splitmix64(master) ^ stream) ^ salt);
  return std::mt19937_64(seed);
}

ComplexMatrix dft_rows(int n_rows, int n_cols) {
  ComplexMatrix c(n_rows, n_cols);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_cols));
  for (int k = 0; k < n_rows; ++k) {
    for (int t = 0; t < n_cols; ++t) {
      // Reduce k·t modulo n_cols first so the angle stays exact for long pilots.
      const auto idx = static_cast<double>((static_cast<long long>(k) * t) % n_cols);
      const double angle = -2.0 * std::numbers::pi * idx / n_cols;
      c(k, t) = std::polar(scale, angle);
    }
  }
  return c;
}

// Rotates column `col` of `m` so its first significant entry is real and
// non-negative; returns the applied phase factor.
Complex normalise_column_phase(ComplexMatrix& m, Eigen::Index col) {
  constexpr double kSignificant = 1e-8;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    const double mag = std::abs(m(r, col));
    if (mag > kSignificant) {
      const Complex phase = std::conj(m(r, col)) / mag;
      m.col(col) *= phase;
      m(r, col) = Complex(mag, 0.0);
      return phase;
    }
  }
  return Complex(1.0, 0.0);
}

}  // namespace

void require_finite(const ComplexMatrix& m, const std::string& what) {
  if (!m.allFinite()) {
    throw NumericalError(what + " " + shape_string(m) + " contains NaN or Inf");
  }
}

std::string shape_string(const ComplexMatrix& m) {
  std::ostringstream os;
  os << '(' << m.rows() << 'x' << m.cols() << ')';
  return os.str();
}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : RngStream(master_seed, stream_id, 0) {}

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id, std::uint64_t salt)
    : master_seed_(master_seed),
      stream_id_(stream_id),
      salt_(salt),
      engine_(make_engine(master_seed, stream_id, salt)) {}

RngStream RngStream::fork(std::uint64_t salt) const {
  return RngStream(master_seed_, stream_id_, splitmix64(salt_ ^ splitmix64(salt + 1)));
}

double RngStream::normal(double stddev) { return stddev * normal_(engine_); }

SvdResult svd(const ComplexMatrix& a) {
  if (a.rows() < 1 || a.cols() < 1) {
    throw DimensionError("svd: empty matrix " + shape_string(a));
  }
  require_finite(a, "svd input");

  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out{solver.matrixU(), solver.singularValues(), solver.matrixV()};
  if (!out.u.allFinite() || !out.v.allFinite() || !out.sigma.allFinite()) {
    throw NumericalError("svd: no convergence for " + shape_string(a) + " matrix");
  }

  const Eigen::Index k = out.sigma.size();
  for (Eigen::Index j = 0; j < k; ++j) {
    const Complex phase = normalise_column_phase(out.u, j);
    out.v.col(j) *= phase;
  }
  for (Eigen::Index j = k; j < out.u.cols(); ++j) normalise_column_phase(out.u, j);
  for (Eigen::Index j = k; j < out.v.cols(); ++j) normalise_column_phase(out.v, j);
  return out;
}

ComplexMatrix left_null_basis(const ComplexMatrix& a, int rank) {
  const auto m = static_cast<int>(a.rows());
  if (rank < 1 || rank >= m || rank > a.cols()) {
    throw DimensionError("left_null_basis: rank " + std::to_string(rank) +
                         " invalid for " + shape_string(a) + " input");
  }
  const SvdResult s = svd(a);
  return s.u.rightCols(m - rank);
}

ComplexMatrix complex_gaussian(RngStream& rng, int rows, int cols, double variance) {
  if (variance < 0.0) throw std::invalid_argument("complex_gaussian: negative variance");
  ComplexMatrix out(rows, cols);
  const double sd = std::sqrt(variance / 2.0);
  // Column-major fill; part order (re, im) is part of the reproducibility contract.
  for (int c = 0; c < cols; ++c) {
    for (int r = 0; r < rows; ++r) {
      const double re = rng.normal(sd);
      const double im = rng.normal(sd);
      out(r, c) = Complex(re, im);
    }
  }
  return out;
}

ComplexMatrix orthonormal_rows(RngStream* rng, int n_rows, int n_cols, PilotMode mode) {
  if (n_rows < 1 || n_rows > n_cols) {
    throw DimensionError("orthonormal_rows: need 1 <= n_rows <= n_cols, got " +
                         std::to_string(n_rows) + "x" + std::to_string(n_cols));
  }
  if (mode == PilotMode::fixed) {
    thread_local std::map<std::pair<int, int>, ComplexMatrix> cache;
    auto [it, inserted] = cache.try_emplace({n_rows, n_cols});
    if (inserted) it->second = dft_rows(n_rows, n_cols);
    return it->second;
  }
  if (rng == nullptr) throw UsageError("orthonormal_rows: random mode needs an RngStream");
  const ComplexMatrix draw = complex_gaussian(*rng, n_cols, n_rows, 1.0);
  Eigen::HouseholderQR<ComplexMatrix> qr(draw);
  const ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n_cols, n_rows);
  return q.adjoint();
}

}  // namespace dce
