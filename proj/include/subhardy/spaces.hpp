#pragma once

#include <optional>
#include <utility>
#include <variant>

#include <Eigen/Cholesky>
#include <Eigen/QR>

#include "subhardy/coeff_vector.hpp"
#include "subhardy/types.hpp"
#include "subhardy/weight_sequence.hpp"

namespace subhardy {

/// Truncated weighted Hardy space: polynomials of degree < dim with
/// <f, g> = sum f_n conj(g_n) beta_n^2.
class DiagonalSpace {
 public:
  explicit DiagonalSpace(WeightSequence beta) : beta_(std::move(beta)) {}

  Index ambient_dim() const { return beta_.size(); }
  const WeightSequence& norming() const { return beta_; }

  Complex inner(const CoeffVector& f, const CoeffVector& g) const {
    if (f.ambient_dim() != ambient_dim() || g.ambient_dim() != ambient_dim())
      throw DimensionMismatch("inner product operands do not match the space window");
    Complex s(0);
    for (Index n = 0; n < ambient_dim(); ++n)
      s += f.coeff(n) * std::conj(g.coeff(n)) * (beta_.beta(n) * beta_.beta(n));
    return s;
  }

  double norm(const CoeffVector& f) const { return std::sqrt(std::real(inner(f, f))); }

 private:
  WeightSequence beta_;
};

/// Finite-dimensional polynomial space with an explicit metric: columns of
/// `basis` are ambient coefficient vectors spanning the space, and
/// gram(i, j) = <basis_j, basis_i>.  The Gram matrix must be Hermitian
/// positive definite and the basis must have full column rank.
class GramSpace {
 public:
  GramSpace(MatrixXcd basis, MatrixXcd gram)
      : basis_(std::move(basis)), gram_(std::move(gram)) {
    const Index m = basis_.cols();
    if (m == 0 || basis_.rows() == 0) throw InvalidSpace("empty basis");
    if (gram_.rows() != m || gram_.cols() != m)
      throw InvalidSpace("Gram matrix size does not match basis count");
    if (!basis_.allFinite() || !gram_.allFinite())
      throw InvalidSpace("space data has non-finite entries");
    const double gscale = gram_.cwiseAbs().maxCoeff();
    if ((gram_ - gram_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * gscale)
      throw InvalidSpace("Gram matrix is not Hermitian");
    gram_ = 0.5 * (gram_ + gram_.adjoint().eval());  // symmetrize roundoff
    llt_.compute(gram_);
    if (llt_.info() != Eigen::Success)
      throw InvalidSpace("Gram matrix is not positive definite");
    qr_.compute(basis_);
    if (qr_.rank() < m) throw InvalidSpace("basis is rank deficient");
  }

  Index ambient_dim() const { return basis_.rows(); }
  Index dim() const { return basis_.cols(); }
  const MatrixXcd& basis() const { return basis_; }
  const MatrixXcd& gram() const { return gram_; }
  const Eigen::LLT<MatrixXcd>& gram_factor() const { return llt_; }

  CoeffVector basis_vector(Index j) const {
    return CoeffVector(basis_.col(j));
  }

  Complex inner_coords(const VectorXcd& x, const VectorXcd& y) const {
    return (y.adjoint() * gram_ * x)(0);
  }
  double norm_coords(const VectorXcd& x) const {
    return std::sqrt(std::abs(std::real((x.adjoint() * gram_ * x)(0))));
  }

  /// Least-squares coordinates of an ambient polynomial in the basis.  The
  /// relative distance from the span is written to *residual when provided;
  /// otherwise a residual above `tol` throws NotRepresentable.
  VectorXcd coordinates(const CoeffVector& f, double* residual = nullptr,
                        double tol = 1e-10) const {
    if (f.ambient_dim() != ambient_dim())
      throw DimensionMismatch("polynomial window does not match the space");
    VectorXcd x = qr_.solve(f.coeffs());
    const double fn = f.coeffs().norm();
    const double r = fn == 0.0 ? 0.0 : (basis_ * x - f.coeffs()).norm() / fn;
    if (residual) {
      *residual = r;
    } else if (r > tol) {
      throw NotRepresentable("polynomial lies outside the space", r);
    }
    return x;
  }

  CoeffVector to_ambient(const VectorXcd& coords) const {
    if (coords.size() != dim())
      throw DimensionMismatch("coordinate vector does not match basis count");
    return CoeffVector(basis_ * coords);
  }

  Complex inner(const CoeffVector& f, const CoeffVector& g) const {
    return inner_coords(coordinates(f), coordinates(g));
  }
  double norm(const CoeffVector& f) const { return norm_coords(coordinates(f)); }

 private:
  MatrixXcd basis_;
  MatrixXcd gram_;
  Eigen::LLT<MatrixXcd> llt_;
  Eigen::ColPivHouseholderQR<MatrixXcd> qr_;
};

/// View a diagonal space as a Gram space on the monomial basis.
inline GramSpace as_gram(const DiagonalSpace& space) {
  const Index d = space.ambient_dim();
  MatrixXcd gram = MatrixXcd::Zero(d, d);
  for (Index n = 0; n < d; ++n) {
    const double b = space.norming().beta(n);
    gram(n, n) = b * b;
  }
  return GramSpace(MatrixXcd::Identity(d, d), std::move(gram));
}

/// Shift-orbit space of a generator: span{b, zb, ..., z^{count-1} b} with the
/// flat metric <z^j b, z^k b> = delta_jk (each shifted copy is a unit vector
/// orthogonal to the others).  This is the natural "multiplier model" norm
/// ||b f|| = ||f||_2 on b * polynomials.
inline GramSpace model_orbit_space(const CoeffVector& b, Index count) {
  if (b.is_zero()) throw InvalidSpace("zero generator");
  if (count < 1) throw InvalidSpace("orbit space needs at least one vector");
  const Index dim = b.ambient_dim();
  MatrixXcd basis(dim, count);
  for (Index k = 0; k < count; ++k)
    basis.col(k) = shifted_dropping_tail(b, k).first.coeffs();
  return GramSpace(std::move(basis), MatrixXcd::Identity(count, count));
}

/// Shift-orbit space of a generator inside a diagonal ambient space: the
/// metric on span{z^k b} is the one inherited from the ambient space, so
/// shifts must stay inside the window exactly.
inline GramSpace induced_orbit_space(const CoeffVector& b, const DiagonalSpace& ambient,
                                     Index count) {
  if (b.is_zero()) throw InvalidSpace("zero generator");
  if (b.ambient_dim() != ambient.ambient_dim())
    throw DimensionMismatch("generator window does not match the ambient space");
  if (count < 1) throw InvalidSpace("orbit space needs at least one vector");
  const Index dim = ambient.ambient_dim();
  if (b.degree() + count - 1 >= dim)
    throw BudgetExceeded("orbit does not fit inside the truncation window");
  MatrixXcd basis(dim, count);
  for (Index k = 0; k < count; ++k) basis.col(k) = shifted(b, k).coeffs();
  MatrixXcd gram(count, count);
  for (Index j = 0; j < count; ++j)
    for (Index k = 0; k < count; ++k)
      gram(k, j) = ambient.inner(CoeffVector(basis.col(j)), CoeffVector(basis.col(k)));
  return GramSpace(std::move(basis), std::move(gram));
}

using SpaceVariant = std::variant<DiagonalSpace, GramSpace>;

inline Index ambient_dim(const SpaceVariant& space) {
  return std::visit([](const auto& s) { return s.ambient_dim(); }, space);
}

}  // namespace subhardy
