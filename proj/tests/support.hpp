#pragma once

#include <cstdint>

#include "dce/matcore.hpp"

namespace dce::test {

inline ComplexMatrix random_matrix(std::uint64_t seed, int rows, int cols) {
  RngStream rng(seed, 0);
  return complex_gaussian(rng, rows, cols, 1.0);
}

// ‖m·mᴴ − I‖_F for row-orthonormal m.
inline double row_unitarity_error(const ComplexMatrix& m) {
  return (m * m.adjoint() - ComplexMatrix::Identity(m.rows(), m.rows())).norm();
}

// ‖mᴴ·m − I‖_F for column-orthonormal m.
inline double col_unitarity_error(const ComplexMatrix& m) {
  return (m.adjoint() * m - ComplexMatrix::Identity(m.cols(), m.cols())).norm();
}

inline ComplexMatrix projector(const ComplexMatrix& basis) { return basis * basis.adjoint(); }

inline bool bit_equal(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a.data()[i].real() != b.data()[i].real() || a.data()[i].imag() != b.data()[i].imag()) {
      return false;
    }
  }
  return true;
}

}  // namespace dce::test
