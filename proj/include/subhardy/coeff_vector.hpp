#pragma once

#include <cmath>
#include <initializer_list>
#include <utility>

#include "subhardy/types.hpp"

namespace subhardy {

/// Polynomial of degree < dim stored by Taylor coefficients: f = sum c_n z^n.
/// The ambient dimension is the truncation window, not the degree; trailing
/// zeros are meaningful padding.
class CoeffVector {
 public:
  explicit CoeffVector(VectorXcd coeffs) : c_(std::move(coeffs)) {
    if (c_.size() == 0) throw InvalidSpace("coefficient vector must be nonempty");
    if (!c_.allFinite()) throw InvalidSpace("coefficient vector has non-finite entries");
  }

  static CoeffVector zero(Index dim) { return CoeffVector(VectorXcd::Zero(dim)); }

  /// z^degree inside a window of size dim.
  static CoeffVector monomial(Index degree, Index dim) {
    if (degree < 0 || degree >= dim)
      throw DimensionMismatch("monomial degree outside ambient window");
    VectorXcd c = VectorXcd::Zero(dim);
    c[degree] = 1.0;
    return CoeffVector(std::move(c));
  }

  static CoeffVector of(std::initializer_list<Complex> coeffs, Index dim = 0) {
    const Index n = static_cast<Index>(coeffs.size());
    VectorXcd c = VectorXcd::Zero(dim > n ? dim : n);
    Index i = 0;
    for (const Complex& v : coeffs) c[i++] = v;
    return CoeffVector(std::move(c));
  }

  Index ambient_dim() const { return c_.size(); }
  const VectorXcd& coeffs() const { return c_; }
  Complex coeff(Index n) const { return (n >= 0 && n < c_.size()) ? c_[n] : Complex(0); }

  /// Largest index with a (bitwise) nonzero coefficient; -1 for the zero vector.
  Index degree() const {
    for (Index n = c_.size() - 1; n >= 0; --n)
      if (c_[n] != Complex(0)) return n;
    return -1;
  }

  /// Smallest index with a nonzero coefficient; ambient_dim() for the zero vector.
  Index valuation() const {
    for (Index n = 0; n < c_.size(); ++n)
      if (c_[n] != Complex(0)) return n;
    return c_.size();
  }

  bool is_zero() const { return degree() < 0; }

  /// Euclidean coefficient norm (the classical H^2 norm of the polynomial).
  double norm2() const { return c_.norm(); }

  CoeffVector padded(Index dim) const {
    if (dim < c_.size()) throw DimensionMismatch("cannot pad to a smaller window");
    VectorXcd c = VectorXcd::Zero(dim);
    c.head(c_.size()) = c_;
    return CoeffVector(std::move(c));
  }

 private:
  VectorXcd c_;
};

inline CoeffVector operator+(const CoeffVector& f, const CoeffVector& g) {
  if (f.ambient_dim() != g.ambient_dim())
    throw DimensionMismatch("adding polynomials from different windows");
  return CoeffVector(f.coeffs() + g.coeffs());
}

inline CoeffVector operator-(const CoeffVector& f, const CoeffVector& g) {
  if (f.ambient_dim() != g.ambient_dim())
    throw DimensionMismatch("subtracting polynomials from different windows");
  return CoeffVector(f.coeffs() - g.coeffs());
}

inline CoeffVector operator*(Complex a, const CoeffVector& f) {
  return CoeffVector(a * f.coeffs());
}

/// Multiplication by z^k inside the window.  Strict: throws if any nonzero
/// coefficient would fall off the top (zero-padding the result would
/// fabricate spurious kernels downstream, so losing mass is an error here).
inline CoeffVector shifted(const CoeffVector& f, Index k = 1) {
  const Index dim = f.ambient_dim();
  if (k < 0) throw DimensionMismatch("negative shift");
  if (f.degree() + k >= dim)
    throw BudgetExceeded("shift pushes coefficients past the truncation window");
  VectorXcd c = VectorXcd::Zero(dim);
  if (k < dim) c.tail(dim - k) = f.coeffs().head(dim - k);
  return CoeffVector(std::move(c));
}

/// Multiplication by z^k, discarding coefficients past the window.  Returns
/// the truncated product and the discarded squared coefficient mass.
inline std::pair<CoeffVector, double> shifted_dropping_tail(const CoeffVector& f, Index k) {
  const Index dim = f.ambient_dim();
  if (k < 0) throw DimensionMismatch("negative shift");
  double dropped = 0.0;
  if (k >= dim) {
    dropped = f.coeffs().squaredNorm();
    return {CoeffVector::zero(dim), dropped};
  }
  dropped = f.coeffs().tail(k).squaredNorm();
  VectorXcd c = VectorXcd::Zero(dim);
  c.tail(dim - k) = f.coeffs().head(dim - k);
  return {CoeffVector(std::move(c)), dropped};
}

/// Cauchy product truncated to the window of f.  Coefficients below the
/// window are exact; anything above it is discarded silently (callers track
/// tail mass where it matters).
inline CoeffVector truncated_product(const CoeffVector& f, const CoeffVector& g) {
  const Index dim = f.ambient_dim();
  const Index df = f.degree();
  const Index dg = g.degree();
  if (df < 0 || dg < 0) return CoeffVector::zero(dim);
  VectorXcd c = VectorXcd::Zero(dim);
  for (Index n = 0; n < dim; ++n) {
    Complex s(0);
    const Index lo = std::max<Index>(0, n - df);
    const Index hi = std::min<Index>(n, dg);
    for (Index k = lo; k <= hi; ++k) s += f.coeff(n - k) * g.coeff(k);
    c[n] = s;
  }
  return CoeffVector(std::move(c));
}

}  // namespace subhardy
