#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <utility>

#include <Eigen/Eigenvalues>

#include "subhardy/orthonormal.hpp"
#include "subhardy/shift_operator.hpp"
#include "subhardy/types.hpp"

namespace subhardy {

namespace detail {

inline Complex leading_significant(const VectorXcd& v) {
  const double scale = v.cwiseAbs().maxCoeff();
  if (scale == 0.0) return Complex(1);
  for (Index n = 0; n < v.size(); ++n)
    if (std::abs(v[n]) > 1e-8 * scale) return v[n];
  return Complex(1);
}

/// Ambient polynomial of a coordinate vector, scaled so its first
/// significant coefficient is +1.  Witnesses print as recognizable
/// polynomials this way (a monomial direction becomes exactly z^k).
inline CoeffVector canonical_ambient(const GramSpace& s, const VectorXcd& coords) {
  VectorXcd amb = s.basis() * coords;
  return CoeffVector(amb / leading_significant(amb));
}

/// Ratio ||T^n e_j||_M / ||e_j||_M for a coordinate direction.
inline double coordinate_power_ratio(const ShiftOperator& op, Index n, Index j) {
  const GramSpace& s = op.space();
  VectorXcd ej = VectorXcd::Zero(s.dim());
  ej[j] = 1.0;
  return s.norm_coords(op.power_image(n).col(j)) / s.norm_coords(ej);
}

/// First coordinate direction violating a ratio predicate, if any.  Used to
/// replace pencil eigenvectors by simple witnesses when possible.
template <class Pred>
std::optional<Index> first_coordinate_violator(const ShiftOperator& op, Index n, Pred bad) {
  for (Index j = 0; j < op.domain_dim(n); ++j)
    if (bad(coordinate_power_ratio(op, n, j))) return j;
  return std::nullopt;
}

inline VectorXcd coordinate_direction(Index dim, Index j) {
  VectorXcd e = VectorXcd::Zero(dim);
  e[j] = 1.0;
  return e;
}

}  // namespace detail

/// Two-sided norm bound on the shift: delta ||x|| <= ||T x|| <= ||x||.
struct CondIVerdict {
  bool holds = false;
  double delta_max = 0.0;  // best available lower constant (= sigma_min)
  double sup_ratio = 0.0;  // sigma_max
  std::optional<CoeffVector> witness;
};

/// Range containment T*^n T^{n+1}(M) in T(M) for n = 1..n_checked.
struct CondIIVerdict {
  bool holds = false;
  Index n_checked = 0;
  double max_residual = 0.0;
  std::optional<Index> witness_power;
  std::optional<CoeffVector> witness;  // image vector escaping T(M)
};

/// Uniform lower bounds delta ||x|| <= ||T^n x|| across powers n = 1..n_checked.
struct Ine1Verdict {
  bool holds = false;
  Index n_checked = 0;
  double delta_max = 0.0;  // min over n of sigma_min(T^n)
  double sup_ratio = 0.0;  // max over n of sigma_max(T^n)
  std::optional<Index> witness_power;
  std::optional<CoeffVector> witness;
};

/// Verdict for one of the two concavity-type shift inequalities.  lambda_min
/// is the most negative eigenvalue of the defect form against the metric;
/// lhs / rhs are the inequality sides evaluated at the reported direction.
struct ShimorinVerdict {
  bool holds = false;
  double lambda_min = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::optional<CoeffVector> witness_x;
  std::optional<CoeffVector> witness_y;  // only for the two-vector inequality
};

inline CondIVerdict check_condition_i(const ShiftOperator& op,
                                      std::optional<double> delta = {}) {
  const Tolerances& tol = op.tolerances();
  const SingularExtremes e = op.singular_extremes(1);
  const bool upper_ok = e.sigma_max <= 1.0 + tol.semidefinite;
  const bool lower_ok =
      delta ? e.sigma_min >= *delta - tol.semidefinite : e.sigma_min > tol.semidefinite;
  CondIVerdict v;
  v.holds = upper_ok && lower_ok;
  v.sup_ratio = e.sigma_max;
  v.delta_max = v.holds ? std::min(e.sigma_min, 1.0) : e.sigma_min;
  if (!upper_ok) {
    auto j = detail::first_coordinate_violator(
        op, 1, [&](double r) { return r > 1.0 + tol.semidefinite; });
    v.witness = detail::canonical_ambient(
        op.space(), j ? detail::coordinate_direction(op.dim(), *j) : e.argmax);
  } else if (!lower_ok) {
    auto j = detail::first_coordinate_violator(op, 1, [&](double r) {
      return delta ? r < *delta - tol.semidefinite : r <= tol.semidefinite;
    });
    v.witness = detail::canonical_ambient(
        op.space(), j ? detail::coordinate_direction(op.dim(), *j) : e.argmin);
  }
  return v;
}

inline CondIIVerdict check_condition_ii(const ShiftOperator& op, Index n_max) {
  if (n_max < 1) throw DimensionMismatch("condition (ii) horizon must be >= 1");
  if (op.domain_dim(n_max + 1) < 1)
    throw BudgetExceeded("condition (ii) horizon exceeds the truncation window");
  const Tolerances& tol = op.tolerances();
  const GramSpace& s = op.space();
  const MatrixXcd range_frame = metric_orthonormalize(s, op.power_image(1), tol.rank);
  const MatrixXcd& astar = op.adjoint();

  CondIIVerdict v;
  v.n_checked = n_max;
  MatrixXcd astar_n = MatrixXcd::Identity(op.dim(), op.dim());
  VectorXcd worst;
  for (Index n = 1; n <= n_max; ++n) {
    astar_n = astar_n * astar;
    const MatrixXcd& pn1 = op.power_image(n + 1);
    if (pn1.cols() == 0) {
      v.n_checked = n - 1;
      break;
    }
    const MatrixXcd u = astar_n * pn1;
    for (Index j = 0; j < u.cols(); ++j) {
      const double un = s.norm_coords(u.col(j));
      if (un == 0.0) continue;
      const VectorXcd rem = u.col(j) - project_onto_frame(s, range_frame, u.col(j));
      const double res = s.norm_coords(rem) / un;
      if (res > v.max_residual) {
        v.max_residual = res;
        v.witness_power = n;
        worst = u.col(j);
      }
    }
  }
  v.holds = v.max_residual <= tol.containment;
  if (!v.holds) v.witness = detail::canonical_ambient(s, worst);
  if (v.holds) v.witness_power.reset();
  return v;
}

inline Ine1Verdict check_ine1(const ShiftOperator& op, Index n_max,
                              std::optional<double> delta = {}) {
  if (n_max < 1) throw DimensionMismatch("power horizon must be >= 1");
  if (op.domain_dim(n_max) < 1)
    throw BudgetExceeded("power horizon exceeds the truncation window");
  const Tolerances& tol = op.tolerances();
  Ine1Verdict v;
  v.n_checked = n_max;
  Index worst_n = 1;
  VectorXcd worst_dir;
  for (Index n = 1; n <= n_max; ++n) {
    const SingularExtremes e = op.singular_extremes(n);
    if (n == 1 || e.sigma_min < v.delta_max) {
      v.delta_max = e.sigma_min;
      worst_n = n;
      worst_dir = e.argmin;
    }
    v.sup_ratio = std::max(v.sup_ratio, e.sigma_max);
  }
  v.holds = delta ? v.delta_max >= *delta - tol.semidefinite
                  : v.delta_max > tol.semidefinite;
  if (!v.holds) {
    v.witness_power = worst_n;
    auto j = detail::first_coordinate_violator(op, worst_n, [&](double r) {
      return delta ? r < *delta - tol.semidefinite : r <= tol.semidefinite;
    });
    v.witness = detail::canonical_ambient(
        op.space(), j ? detail::coordinate_direction(op.dim(), *j) : worst_dir);
  } else {
    v.delta_max = std::min(v.delta_max, 1.0);
  }
  return v;
}

/// Concavity bound ||T^2 x||^2 + ||x||^2 <= 2 ||T x||^2 over the window
/// where T^2 is exact.
inline ShimorinVerdict check_shimorin_1(const ShiftOperator& op) {
  const Tolerances& tol = op.tolerances();
  const GramSpace& s = op.space();
  const Index k = std::min(op.domain_dim(2), op.domain_dim(1));
  if (k < 1)
    throw BudgetExceeded("second shift power has empty domain inside the window");
  const MatrixXcd a1 = op.power_image(1).leftCols(k);
  const MatrixXcd a2 = op.power_image(2).leftCols(k);
  const MatrixXcd& g = s.gram();
  const MatrixXcd gk = g.topLeftCorner(k, k);
  MatrixXcd defect = 2.0 * a1.adjoint() * g * a1 - a2.adjoint() * g * a2 - gk;
  defect = 0.5 * (defect + defect.adjoint().eval());
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> es(defect, gk);
  if (es.info() != Eigen::Success)
    throw Error("generalized eigensolver failed on the two-step defect form");

  ShimorinVerdict v;
  v.lambda_min = es.eigenvalues()[0];
  const double scale =
      std::max({1.0, std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[k - 1])});
  v.holds = v.lambda_min >= -tol.semidefinite * scale;

  VectorXcd x = es.eigenvectors().col(0);
  if (!v.holds) {
    for (Index j = 0; j < k; ++j) {
      const VectorXcd ej = detail::coordinate_direction(k, j);
      const double q = std::real((ej.adjoint() * defect * ej)(0));
      const double nn = std::real((ej.adjoint() * gk * ej)(0));
      if (q < -tol.semidefinite * scale * nn) {
        x = ej;
        break;
      }
    }
  }
  VectorXcd xm = VectorXcd::Zero(op.dim());
  xm.head(k) = x;
  xm /= detail::leading_significant(s.basis() * xm);
  v.lhs = std::pow(s.norm_coords(a2 * xm.head(k)), 2) + std::pow(s.norm_coords(xm), 2);
  v.rhs = 2.0 * std::pow(s.norm_coords(a1 * xm.head(k)), 2);
  if (!v.holds) v.witness_x = CoeffVector(s.basis() * xm);
  return v;
}

/// ||T x + y||^2 <= 2 (||x||^2 + ||T y||^2) for x, y in the exact domain of T.
inline ShimorinVerdict check_shimorin_2(const ShiftOperator& op) {
  const Tolerances& tol = op.tolerances();
  const GramSpace& s = op.space();
  const Index k = op.domain_dim(1);
  if (k < 1) throw BudgetExceeded("shift has empty domain inside the window");
  const MatrixXcd& a1 = op.power_image(1);
  const MatrixXcd& g = s.gram();
  const MatrixXcd gk = g.topLeftCorner(k, k);
  const MatrixXcd t_in = a1.adjoint() * g * a1;     // <Tx, Tx'> on the domain
  const MatrixXcd c = (g * a1).topRows(k);          // <Tx, y> = y^H c x
  MatrixXcd q(2 * k, 2 * k);
  q.topLeftCorner(k, k) = 2.0 * gk - t_in;
  q.topRightCorner(k, k) = -c.adjoint();
  q.bottomLeftCorner(k, k) = -c;
  q.bottomRightCorner(k, k) = 2.0 * t_in - gk;
  q = 0.5 * (q + q.adjoint().eval());
  MatrixXcd p = MatrixXcd::Zero(2 * k, 2 * k);
  p.topLeftCorner(k, k) = gk;
  p.bottomRightCorner(k, k) = gk;
  Eigen::GeneralizedSelfAdjointEigenSolver<MatrixXcd> es(q, p);
  if (es.info() != Eigen::Success)
    throw Error("generalized eigensolver failed on the two-vector defect form");

  ShimorinVerdict v;
  v.lambda_min = es.eigenvalues()[0];
  const double scale = std::max(
      {1.0, std::abs(es.eigenvalues()[0]), std::abs(es.eigenvalues()[2 * k - 1])});
  v.holds = v.lambda_min >= -tol.semidefinite * scale;

  VectorXcd x = es.eigenvectors().col(0).head(k);
  VectorXcd y = es.eigenvectors().col(0).tail(k);
  if (!v.holds) {
    static constexpr std::array<Complex, 4> phases = {
        Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)};
    bool found = false;
    for (Index sum = 0; sum <= 2 * (k - 1) && !found; ++sum) {
      for (Index j = std::max<Index>(0, sum - (k - 1)); j <= std::min(sum, k - 1) && !found;
           ++j) {
        const Index l = sum - j;
        for (const Complex& zeta : phases) {
          const double val = std::real(q(j, j) + q(k + l, k + l) +
                                       2.0 * std::conj(zeta) * q(k + l, j));
          const double nn = std::real(gk(j, j) + gk(l, l));
          if (val < -tol.semidefinite * scale * nn) {
            x = detail::coordinate_direction(k, j);
            y = zeta * detail::coordinate_direction(k, l);
            found = true;
            break;
          }
        }
      }
    }
  }
  VectorXcd xm = VectorXcd::Zero(op.dim()), ym = VectorXcd::Zero(op.dim());
  xm.head(k) = x;
  ym.head(k) = y;
  const VectorXcd ax = s.basis() * xm;
  const VectorXcd ay = s.basis() * ym;
  const double mx = ax.cwiseAbs().maxCoeff(), my = ay.cwiseAbs().maxCoeff();
  const Complex lead = (mx > 1e-8 * my && mx > 0.0) ? detail::leading_significant(ax)
                                                    : detail::leading_significant(ay);
  xm /= lead;
  ym /= lead;
  v.lhs = std::pow(s.norm_coords(a1 * xm.head(k) + ym), 2);
  v.rhs = 2.0 * (std::pow(s.norm_coords(xm), 2) +
                 std::pow(s.norm_coords(a1 * ym.head(k)), 2));
  if (!v.holds) {
    v.witness_x = CoeffVector(s.basis() * xm);
    v.witness_y = CoeffVector(s.basis() * ym);
  }
  return v;
}

struct HypothesisOptions {
  Index n_max = 8;
  std::optional<double> delta;  // required lower shift bound, if the caller has one
};

struct HypothesisReport {
  CondIVerdict cond_i;
  CondIIVerdict cond_ii;
  Ine1Verdict ine1;
  ShimorinVerdict shimorin_1;
  ShimorinVerdict shimorin_2;
  Index n_max = 0;
  std::optional<double> delta;

  /// The two hypotheses the structure theory actually needs.
  bool core_hold() const { return cond_i.holds && cond_ii.holds; }
};

inline HypothesisReport run_hypothesis_checks(const ShiftOperator& op,
                                              const HypothesisOptions& opts = {}) {
  HypothesisReport r;
  r.n_max = opts.n_max;
  r.delta = opts.delta;
  r.cond_i = check_condition_i(op, opts.delta);
  r.cond_ii = check_condition_ii(op, opts.n_max);
  r.ine1 = check_ine1(op, opts.n_max, opts.delta);
  r.shimorin_1 = check_shimorin_1(op);
  r.shimorin_2 = check_shimorin_2(op);
  return r;
}

}  // namespace subhardy
