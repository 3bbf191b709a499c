#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace subhardy {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using Eigen::MatrixXcd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operand sizes are incompatible (different ambient dimensions, etc.).
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// A space constructor was handed invalid data (non-positive weights,
/// non-Hermitian or indefinite Gram matrix, rank-deficient basis, ...).
class InvalidSpace : public Error {
 public:
  using Error::Error;
};

/// A vector is not (numerically) in the span of a subspace basis.
class NotRepresentable : public Error {
 public:
  NotRepresentable(const std::string& what, double residual)
      : Error(what), residual(residual) {}
  double residual;
};

/// Multiplication by z maps some interior basis vector outside the subspace,
/// so no truncated shift operator exists.  `index` is the offending basis
/// column and `residual` the relative distance from the span.
class NotInvariant : public Error {
 public:
  NotInvariant(const std::string& what, Index index, double residual)
      : Error(what), index(index), residual(residual) {}
  Index index;
  double residual;
};

/// A requested power / horizon does not fit inside the truncation window.
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

/// Structure extraction was invoked without verified hypotheses.
class HypothesesNotVerified : public Error {
 public:
  using Error::Error;
};

/// The kernel of the adjoint has dimension != 1, so there is no single
/// generator to extract.
class WanderingDimError : public Error {
 public:
  WanderingDimError(const std::string& what, Index dim) : Error(what), dim(dim) {}
  Index dim;
};

/// Unknown catalog entry name.
class UnknownEntry : public Error {
 public:
  using Error::Error;
};

/// Numerical thresholds used across the toolkit.  All residual-style
/// comparisons are relative to the scale of the data involved.
struct Tolerances {
  double invariance = 1e-10;    // span-membership residual when building operators
  double containment = 1e-10;   // range-containment residual, condition (ii)
  double eigen = 1e-12;         // agreement between analytic and pencil routes
  double semidefinite = 1e-10;  // slack when deciding inequality verdicts
  double tail = 1e-9;           // discarded coefficient mass when shifting past the window
  double rank = 1e-10;          // relative singular value cutoff for rank decisions
  double vanish = 1e-12;        // relative row mass treated as a vanishing coefficient
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EEDULL;

}  // namespace subhardy
