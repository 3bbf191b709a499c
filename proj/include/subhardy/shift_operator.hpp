#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Eigenvalues>

#include "subhardy/spaces.hpp"
#include "subhardy/types.hpp"

namespace subhardy {

/// Extremes of ||T^n x||_M / ||x||_M over the window where T^n is exact.
/// argmin/argmax are coordinate vectors of unit metric norm.
struct SingularExtremes {
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  VectorXcd argmin;
  VectorXcd argmax;
};

/// Compression of multiplication-by-z to a truncated invariant subspace.
///
/// The matrix acts on basis coordinates.  Columns whose shifted basis vector
/// escapes the truncation window form a trailing edge and are stored as
/// zeros; domain_dim(n) counts the leading basis vectors on which the n-th
/// power is still exact.  A non-representable *interior* column means the
/// space is genuinely not shift invariant and construction fails.
class ShiftOperator {
 public:
  static ShiftOperator build(const DiagonalSpace& space, const Tolerances& tol = {}) {
    ShiftOperator op(as_gram(space), tol);
    op.beta_ = space.norming();
    const Index m = op.dim();
    op.a_ = MatrixXcd::Zero(m, m);
    for (Index j = 0; j + 1 < m; ++j) op.a_(j + 1, j) = 1.0;
    op.valid_[1] = m - 1;
    op.powers_[1] = op.a_.leftCols(m - 1);
    return op;
  }

  static ShiftOperator build(GramSpace space, const Tolerances& tol = {}) {
    ShiftOperator op(std::move(space), tol);
    auto [img, valid] = op.shifted_columns(1);
    op.a_ = MatrixXcd::Zero(op.dim(), op.dim());
    op.a_.leftCols(valid) = img;
    op.valid_[1] = valid;
    op.powers_[1] = std::move(img);
    return op;
  }

  const GramSpace& space() const { return space_; }
  const Tolerances& tolerances() const { return tol_; }
  Index dim() const { return space_.dim(); }

  /// Set when built from a diagonal space; enables the exact arithmetic paths.
  const WeightSequence* norming() const { return beta_ ? &*beta_ : nullptr; }

  const MatrixXcd& matrix() const { return a_; }

  Index domain_dim(Index n) const {
    if (n == 0) return dim();
    return power_image(n).cols();
  }

  /// Coordinates of T^n basis_j for the leading columns where the power is
  /// exact.  Powers are formed by shifting ambient coefficients, not by
  /// chaining the truncated matrix, so no edge effects accumulate.
  const MatrixXcd& power_image(Index n) const {
    if (n < 1) throw DimensionMismatch("power must be >= 1");
    auto it = powers_.find(n);
    if (it != powers_.end()) return it->second;
    if (beta_) {
      const Index m = dim();
      const Index k = n >= m ? 0 : m - n;
      MatrixXcd img = MatrixXcd::Zero(m, k);
      for (Index j = 0; j < k; ++j) img(j + n, j) = 1.0;
      return powers_.emplace(n, std::move(img)).first->second;
    }
    auto [img, valid] = shifted_columns(n);
    (void)valid;
    return powers_.emplace(n, std::move(img)).first->second;
  }

  /// Metric adjoint: the matrix of T* with respect to the basis, i.e.
  /// G^{-1} A^H G.  For diagonal spaces this is the exact weighted
  /// backward shift beta_{k+1}^2 / beta_k^2.
  const MatrixXcd& adjoint() const {
    if (adjoint_) return *adjoint_;
    const Index m = dim();
    if (beta_) {
      MatrixXcd astar = MatrixXcd::Zero(m, m);
      const Index k1 = valid_.at(1);
      for (Index j = 0; j < k1; ++j) {
        const double bj = beta_->beta(j), bj1 = beta_->beta(j + 1);
        astar(j, j + 1) = (bj1 * bj1) / (bj * bj);
      }
      adjoint_ = std::move(astar);
    } else {
      adjoint_ = space_.gram_factor().solve(a_.adjoint() * space_.gram());
    }
    return *adjoint_;
  }

  /// Extremes of the n-th power restricted to its exact domain, measured in
  /// the space metric.  Diagonal spaces use the exact ratio formula; general
  /// spaces solve the Hermitian pencil (P^H G P, G).
  SingularExtremes singular_extremes(Index n = 1) const {
    const Index k = domain_dim(n);
    if (k < 1)
      throw BudgetExceeded("power " + std::to_string(n) +
                           " has empty domain inside the truncation window");
    SingularExtremes out;
    if (beta_) {
      Index jmin = 0, jmax = 0;
      double rmin = 0, rmax = 0;
      for (Index j = 0; j < k; ++j) {
        const double r = beta_->beta(j + n) / beta_->beta(j);
        if (j == 0 || r < rmin) { rmin = r; jmin = j; }
        if (j == 0 || r > rmax) { rmax = r; jmax = j; }
      }
      out.sigma_min = rmin;
      out.sigma_max = rmax;
      out.argmin = VectorXcd::Zero(dim());
      out.argmax = VectorXcd::Zero(dim());
      out.argmin[jmin] = 1.0 / beta_->beta(jmin);
      out.argmax[jmax] = 1.0 / beta_->beta(jmax);
      return out;
    }
    const MatrixXcd& p = power_image(n);
    const MatrixXcd q = p.adjoint() * space_.gram() * p;
    const MatrixXcd b = space_.gram().topLeftCorner(k, k);
    Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> es(q, b);
    if (es.info() != Eigen::Success)
      throw Error("generalized eigensolver failed on the power pencil");
    out.sigma_min = std::sqrt(std::max(es.eigenvalues()[0], 0.0));
    out.sigma_max = std::sqrt(std::max(es.eigenvalues()[k - 1], 0.0));
    out.argmin = VectorXcd::Zero(dim());
    out.argmax = VectorXcd::Zero(dim());
    out.argmin.head(k) = es.eigenvectors().col(0);
    out.argmax.head(k) = es.eigenvectors().col(k - 1);
    return out;
  }

  std::pair<double, double> metric_singular_values() const {
    const SingularExtremes e = singular_extremes(1);
    return {e.sigma_min, e.sigma_max};
  }

 private:
  ShiftOperator(GramSpace space, const Tolerances& tol)
      : space_(std::move(space)), tol_(tol) {}

  /// Shift every basis column by z^n in ambient coefficients and solve for
  /// coordinates.  Bad columns (tail mass or span residual too large) must
  /// form a trailing block; the returned matrix keeps the good prefix.
  std::pair<MatrixXcd, Index> shifted_columns(Index n) const {
    const Index m = dim();
    std::vector<bool> ok(m, false);
    std::vector<double> res(m, 0.0);
    MatrixXcd img = MatrixXcd::Zero(m, m);
    for (Index j = 0; j < m; ++j) {
      const CoeffVector col = space_.basis_vector(j);
      const double mass = col.coeffs().squaredNorm();
      auto [sh, dropped] = shifted_dropping_tail(col, n);
      if (dropped > tol_.tail * mass) {
        res[j] = std::sqrt(dropped / mass);
        continue;
      }
      double r = 0.0;
      const VectorXcd x = space_.coordinates(sh, &r);
      res[j] = r;
      if (r <= tol_.invariance) {
        ok[j] = true;
        img.col(j) = x;
      }
    }
    Index valid = m;
    while (valid > 0 && !ok[valid - 1]) --valid;
    if (n == 1 && valid == 0)
      throw NotInvariant("no basis vector stays in the space under the shift", 0, res[0]);
    for (Index j = 0; j < valid; ++j)
      if (!ok[j])
        throw NotInvariant("shifted basis vector " + std::to_string(j) +
                               " leaves the space (power " + std::to_string(n) + ")",
                           j, res[j]);
    return {img.leftCols(valid), valid};
  }

  GramSpace space_;
  Tolerances tol_;
  std::optional<WeightSequence> beta_;
  MatrixXcd a_;
  std::map<Index, Index> valid_;
  mutable std::map<Index, MatrixXcd> powers_;
  mutable std::optional<MatrixXcd> adjoint_;
};

/// Strict multiplication by z in ambient coefficients (errors if the top
/// coefficient would be lost).
inline CoeffVector apply_shift(const CoeffVector& f) { return shifted(f, 1); }

}  // namespace subhardy
