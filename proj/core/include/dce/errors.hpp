#pragma once

#include <stdexcept>
#include <string>

namespace dce {

// Each category maps onto one CLI exit code (see tools/dce_main.cpp).

/// Shape or rank precondition violated by the caller.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Operation invoked in a mode the scenario does not permit.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The configuration admits no feasible solution (training length too short,
/// UR threshold outside its admissible range, ...).
class InfeasibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical kernel failed: non-finite data, non-convergence, degenerate
/// correlation matrices.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dce
