#pragma once

#include <utility>

#include "subhardy/spaces.hpp"
#include "subhardy/types.hpp"

namespace subhardy {

/// Modified Gram-Schmidt in the metric of `space`, acting on coordinate
/// columns.  Columns whose residual drops below rank_tol (relative to their
/// own metric norm) are dropped, so the returned frame has full rank and
/// metric-orthonormal columns.  Two passes keep near-degenerate input stable.
inline MatrixXcd metric_orthonormalize(const GramSpace& space, const MatrixXcd& cols,
                                       double rank_tol) {
  const Index m = space.dim();
  MatrixXcd q(m, cols.cols());
  Index r = 0;
  for (Index j = 0; j < cols.cols(); ++j) {
    VectorXcd v = cols.col(j);
    const double scale = space.norm_coords(v);
    if (scale == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (Index i = 0; i < r; ++i)
        v -= space.inner_coords(v, q.col(i)) * q.col(i);
    const double n = space.norm_coords(v);
    if (n > rank_tol * scale) q.col(r++) = v / n;
  }
  return q.leftCols(r);
}

/// Metric-orthogonal projection of x onto the span of a metric-orthonormal
/// frame q.
inline VectorXcd project_onto_frame(const GramSpace& space, const MatrixXcd& q,
                                    const VectorXcd& x) {
  VectorXcd p = VectorXcd::Zero(x.size());
  for (Index i = 0; i < q.cols(); ++i)
    p += space.inner_coords(x, q.col(i)) * q.col(i);
  return p;
}

/// Metric-orthonormal frame for the orthogonal complement of span(q) inside
/// the whole space, built by sweeping the coordinate directions.
inline MatrixXcd complement_frame(const GramSpace& space, const MatrixXcd& q,
                                  double rank_tol) {
  const Index m = space.dim();
  MatrixXcd comp(m, m);
  Index r = 0;
  for (Index j = 0; j < m && r < m - q.cols(); ++j) {
    VectorXcd v = VectorXcd::Zero(m);
    v[j] = 1.0;
    const double scale = space.norm_coords(v);
    for (int pass = 0; pass < 2; ++pass) {
      v -= project_onto_frame(space, q, v);
      for (Index i = 0; i < r; ++i)
        v -= space.inner_coords(v, comp.col(i)) * comp.col(i);
    }
    const double n = space.norm_coords(v);
    if (n > rank_tol * scale) comp.col(r++) = v / n;
  }
  return comp.leftCols(r);
}

}  // namespace subhardy
