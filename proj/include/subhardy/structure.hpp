#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "subhardy/hypothesis.hpp"
#include "subhardy/orthonormal.hpp"
#include "subhardy/shift_operator.hpp"
#include "subhardy/types.hpp"

namespace subhardy {

/// Metric-orthonormal frame for M minus T(M) (kernel of the adjoint).
struct WanderingSubspace {
  MatrixXcd frame;  // coordinate columns, metric-orthonormal
  Index dim = 0;
};

inline WanderingSubspace wandering_subspace(const ShiftOperator& op) {
  const GramSpace& s = op.space();
  const double rank_tol = op.tolerances().rank;
  const MatrixXcd range = metric_orthonormalize(s, op.power_image(1), rank_tol);
  WanderingSubspace w;
  w.frame = complement_frame(s, range, rank_tol);
  w.dim = w.frame.cols();
  return w;
}

/// Number of leading ambient coefficient rows that vanish on the whole
/// basis, i.e. the order of the common zero at the origin.
inline Index detect_vanishing_order(const GramSpace& s, double vanish_tol = 1e-12) {
  double scale = 0.0;
  for (Index r = 0; r < s.ambient_dim(); ++r)
    scale = std::max(scale, s.basis().row(r).norm());
  for (Index r = 0; r < s.ambient_dim(); ++r)
    if (s.basis().row(r).norm() > vanish_tol * scale) return r;
  throw InvalidSpace("basis has no nonzero rows");
}

/// Divide the whole space by z^order: ambient coefficients move down by
/// `order` rows, the metric is unchanged.  Requires every basis vector to
/// actually vanish to that order at the origin.
inline GramSpace deflate(const GramSpace& s, Index order, double vanish_tol = 1e-12) {
  if (order < 1) throw InvalidSpace("deflation order must be >= 1");
  const Index d = s.ambient_dim();
  if (order >= d) throw InvalidSpace("deflation order exceeds the window");
  double scale = 0.0;
  for (Index r = 0; r < d; ++r) scale = std::max(scale, s.basis().row(r).norm());
  for (Index r = 0; r < order; ++r)
    if (s.basis().row(r).norm() > vanish_tol * scale)
      throw InvalidSpace("cannot deflate: some basis vector has a nonzero coefficient below the requested order");
  MatrixXcd basis = MatrixXcd::Zero(d, s.dim());
  basis.topRows(d - order) = s.basis().bottomRows(d - order);
  return GramSpace(std::move(basis), s.gram());
}

namespace detail {

/// T^j x for an arbitrary coordinate vector, via the ambient shift (no
/// truncated-matrix chaining).  Throws if the result leaves the window or
/// the space.
inline VectorXcd apply_power(const ShiftOperator& op, Index j, const VectorXcd& coords) {
  if (j == 0) return coords;
  const GramSpace& s = op.space();
  const CoeffVector amb(s.basis() * coords);
  const double mass = amb.coeffs().squaredNorm();
  auto [sh, dropped] = shifted_dropping_tail(amb, j);
  if (dropped > op.tolerances().tail * mass)
    throw BudgetExceeded("shift power pushes the vector past the truncation window");
  double r = 0.0;
  VectorXcd x = s.coordinates(sh, &r);
  if (r > op.tolerances().invariance)
    throw NotRepresentable("shifted vector left the space", r);
  return x;
}

}  // namespace detail

/// Residual of the finite orthogonal decomposition
///   M = N + T(N) + ... + T^n(N) + T^{n+1}(M)
/// as the max of (a) the largest metric inner product between vectors from
/// distinct summands and (b) the relative rank deficiency of the union.
inline double verify_decomposition(const ShiftOperator& op, Index n) {
  if (n < 0) throw DimensionMismatch("decomposition depth must be >= 0");
  if (op.domain_dim(n + 1) < 1)
    throw BudgetExceeded("decomposition depth exceeds the truncation window");
  const GramSpace& s = op.space();
  const double rank_tol = op.tolerances().rank;
  const WanderingSubspace w = wandering_subspace(op);

  std::vector<MatrixXcd> frames;
  for (Index j = 0; j <= n; ++j) {
    MatrixXcd img(s.dim(), w.dim);
    for (Index c = 0; c < w.dim; ++c)
      img.col(c) = detail::apply_power(op, j, w.frame.col(c));
    frames.push_back(metric_orthonormalize(s, img, rank_tol));
  }
  frames.push_back(metric_orthonormalize(s, op.power_image(n + 1), rank_tol));

  double cross = 0.0;
  Index total = 0;
  for (const MatrixXcd& f : frames) total += f.cols();
  MatrixXcd all(s.dim(), total);
  Index at = 0;
  for (size_t i = 0; i < frames.size(); ++i) {
    all.middleCols(at, frames[i].cols()) = frames[i];
    at += frames[i].cols();
    for (size_t l = i + 1; l < frames.size(); ++l)
      for (Index a = 0; a < frames[i].cols(); ++a)
        for (Index b = 0; b < frames[l].cols(); ++b)
          cross = std::max(cross,
                           std::abs(s.inner_coords(frames[i].col(a), frames[l].col(b))));
  }
  const Index rank = metric_orthonormalize(s, all, rank_tol).cols();
  const double deficiency = double(s.dim() - rank) / double(s.dim());
  return std::max(cross, deficiency);
}

/// Contraction and orthogonal-expansion checks for multiplication by the
/// generator: for random polynomials g, ||b g||_M should not exceed ||g||_2
/// (margin) and should expand as sum |g_k|^2 ||z^k b||^2 (identity residual).
struct ContractionCheck {
  double margin = 0.0;             // max ||b g||_M - ||g||_2 over trials
  double identity_residual = 0.0;  // relative expansion-identity defect
  Index trials = 0;
};

inline ContractionCheck verify_contraction(const ShiftOperator& op, const CoeffVector& b,
                                           Index trials = 64,
                                           std::uint64_t seed = kDefaultSeed) {
  const GramSpace& s = op.space();
  const Tolerances& tol = op.tolerances();
  if (b.ambient_dim() != s.ambient_dim())
    throw DimensionMismatch("generator window does not match the space");

  // Representable orbit z^k b and its norms.
  std::vector<double> norms;
  const double mass = b.coeffs().squaredNorm();
  for (Index k = 0; k < s.dim() + 1; ++k) {
    auto [sh, dropped] = shifted_dropping_tail(b, k);
    if (dropped > tol.tail * mass) break;
    double r = 0.0;
    const VectorXcd x = s.coordinates(sh, &r);
    if (r > tol.invariance) break;
    norms.push_back(s.norm_coords(x));
  }
  if (norms.empty()) throw NotRepresentable("generator is not in the space", 1.0);
  const Index klen = static_cast<Index>(norms.size());

  ContractionCheck out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (Index t = 0; t < trials + klen; ++t) {
    VectorXcd g = VectorXcd::Zero(klen);
    if (t < klen) {
      g[t] = 1.0;  // monomial trials first: g = z^t
    } else {
      for (Index k = 0; k < klen; ++k) g[k] = Complex(uni(rng), uni(rng));
    }
    CoeffVector bg = CoeffVector::zero(s.ambient_dim());
    for (Index k = 0; k < klen; ++k)
      bg = bg + g[k] * shifted_dropping_tail(b, k).first;
    double r = 0.0;
    const VectorXcd x = s.coordinates(bg, &r);
    if (r > tol.invariance)
      throw NotRepresentable("generator multiple left the space", r);
    const double lhs = std::pow(s.norm_coords(x), 2);
    double rhs = 0.0;
    for (Index k = 0; k < klen; ++k) rhs += std::norm(g[k]) * norms[k] * norms[k];
    out.identity_residual = std::max(
        out.identity_residual, std::abs(lhs - rhs) / std::max(lhs, rhs));
    out.margin = std::max(out.margin, std::sqrt(lhs) - g.norm());
    ++out.trials;
  }
  return out;
}

/// Two finite shadows of "the image of multiplication by b is closed":
/// the orbit-norm ratio min_k ||z^k b|| / max_k ||z^k b|| staying above the
/// floor, and the uniform power bound delta <= ||T^n x|| / ||x|| doing the
/// same.  The two verdicts must agree on well-posed inputs.
struct ClosednessVerdict {
  double c_low = 0.0;
  double c_high = 0.0;
  double ine1_delta = 0.0;
  double delta_floor = 0.0;
  Index n_checked = 0;
  bool norm_holds = false;
  bool ine1_holds = false;
  bool equivalent = false;
};

inline ClosednessVerdict check_closedness(const ShiftOperator& op, const CoeffVector& b,
                                          Index n_max, double delta_floor = 0.05) {
  const GramSpace& s = op.space();
  const Tolerances& tol = op.tolerances();
  ClosednessVerdict v;
  v.delta_floor = delta_floor;
  v.n_checked = n_max;
  const double mass = b.coeffs().squaredNorm();
  for (Index k = 0; k <= n_max; ++k) {
    auto [sh, dropped] = shifted_dropping_tail(b, k);
    if (dropped > tol.tail * mass)
      throw BudgetExceeded("closedness horizon pushes the orbit past the window");
    double r = 0.0;
    const VectorXcd x = s.coordinates(sh, &r);
    if (r > tol.invariance)
      throw NotRepresentable("orbit vector left the space", r);
    const double n = s.norm_coords(x);
    v.c_low = k == 0 ? n : std::min(v.c_low, n);
    v.c_high = k == 0 ? n : std::max(v.c_high, n);
  }
  const Ine1Verdict ine1 = check_ine1(op, n_max, delta_floor);
  v.ine1_delta = ine1.delta_max;
  v.ine1_holds = ine1.holds;
  v.norm_holds = v.c_low >= (delta_floor - tol.semidefinite) * v.c_high;
  v.equivalent = v.norm_holds == v.ine1_holds;
  return v;
}

struct StructureOptions {
  Index n_max = 8;            // closedness horizon
  Index decomposition_n = 3;  // depth of the finite decomposition check
  Index trials = 64;
  std::uint64_t seed = kDefaultSeed;
  double delta_floor = 0.05;
};

/// Everything the structure theory promises, computed constructively.
struct StructureReport {
  Index vanishing_order = 0;
  double deflation_residual = 0.0;  // operator/metric drift under deflation
  Index wandering_dim = 0;
  CoeffVector generator = CoeffVector::zero(1);  // unit metric norm, leading coeff > 0
  VectorXd orbit_norms;                          // ||z^k b||_M over the window
  VectorXd shift_weights;                        // consecutive orbit-norm ratios
  double orbit_orthogonality = 0.0;  // max normalized |<z^j b, z^k b>|, j != k
  double density_gap = 0.0;          // relative rank deficiency of the orbit
  Index decomposition_n = 0;
  double decomposition_residual = 0.0;
  double contraction_margin = 0.0;        // max_k ||z^k b||_M - 1 (unit generator)
  double contraction_trial_margin = 0.0;  // max ||b g||_M - ||g||_2 over trials
  double expansion_identity_residual = 0.0;
  ClosednessVerdict closedness;

  /// All the constructive conclusions within a verification tolerance.
  bool conclusions_hold(double tol = 1e-8) const {
    return wandering_dim == 1 && decomposition_residual <= tol &&
           contraction_margin <= tol && contraction_trial_margin <= tol &&
           expansion_identity_residual <= tol && orbit_orthogonality <= tol &&
           density_gap == 0.0 && deflation_residual <= tol && closedness.equivalent;
  }
};

/// Constructive generator extraction.  The caller is responsible for having
/// verified the two core hypotheses (two-sided norm bounds and range
/// containment); the flag makes that contract explicit.
inline StructureReport extract_generator(const ShiftOperator& op, bool hypotheses_verified,
                                         const StructureOptions& opts = {}) {
  if (!hypotheses_verified)
    throw HypothesesNotVerified(
        "structure extraction requires the norm-bound and range-containment checks to pass");
  const GramSpace& s = op.space();
  const Tolerances& tol = op.tolerances();
  StructureReport rep;

  rep.vanishing_order = detect_vanishing_order(s, tol.vanish);
  if (rep.vanishing_order > 0) {
    // Dividing out the common zero must not change the operator data.
    const GramSpace k = deflate(s, rep.vanishing_order, tol.vanish);
    const ShiftOperator opk = ShiftOperator::build(k, tol);
    const double ascale = std::max(1.0, op.matrix().cwiseAbs().maxCoeff());
    const double gscale = std::max(1.0, s.gram().cwiseAbs().maxCoeff());
    rep.deflation_residual =
        std::max((opk.matrix() - op.matrix()).cwiseAbs().maxCoeff() / ascale,
                 (k.gram() - s.gram()).cwiseAbs().maxCoeff() / gscale);
  }

  const WanderingSubspace w = wandering_subspace(op);
  rep.wandering_dim = w.dim;
  if (w.dim != 1)
    throw WanderingDimError("wandering subspace has dimension " + std::to_string(w.dim) +
                                ", no single generator exists",
                            w.dim);

  // Canonical phase: first significant ambient coefficient real positive.
  VectorXcd bc = w.frame.col(0);
  VectorXcd bamb = s.basis() * bc;
  const Complex lead = detail::leading_significant(bamb);
  const Complex phase = std::conj(lead) / std::abs(lead);
  bc *= phase;
  bamb *= phase;
  rep.generator = CoeffVector(bamb);

  // Orbit norms and pairwise inner products over the representable window.
  std::vector<VectorXcd> orbit;
  const double mass = bamb.squaredNorm();
  const Index kcap = s.dim() + opts.n_max;
  for (Index k = 0; k <= kcap; ++k) {
    auto [sh, dropped] = shifted_dropping_tail(rep.generator, k);
    if (dropped > tol.tail * mass) break;
    double r = 0.0;
    VectorXcd x = s.coordinates(sh, &r);
    if (r > tol.invariance) break;
    orbit.push_back(std::move(x));
  }
  const Index klen = static_cast<Index>(orbit.size());
  rep.orbit_norms.resize(klen);
  for (Index k = 0; k < klen; ++k) rep.orbit_norms[k] = s.norm_coords(orbit[k]);
  rep.shift_weights.resize(klen - 1);
  for (Index k = 0; k + 1 < klen; ++k)
    rep.shift_weights[k] = rep.orbit_norms[k + 1] / rep.orbit_norms[k];
  for (Index j = 0; j < klen; ++j)
    for (Index k = j + 1; k < klen; ++k)
      rep.orbit_orthogonality =
          std::max(rep.orbit_orthogonality,
                   std::abs(s.inner_coords(orbit[j], orbit[k])) /
                       (rep.orbit_norms[j] * rep.orbit_norms[k]));
  MatrixXcd omat(s.dim(), klen);
  for (Index k = 0; k < klen; ++k) omat.col(k) = orbit[k];
  const Index rank = metric_orthonormalize(s, omat, tol.rank).cols();
  rep.density_gap = double(s.dim() - rank) / double(s.dim());

  for (Index k = 0; k < klen; ++k)
    rep.contraction_margin = std::max(rep.contraction_margin, rep.orbit_norms[k] - 1.0);

  rep.decomposition_n = std::min<Index>(opts.decomposition_n, s.dim() - 2);
  rep.decomposition_residual = verify_decomposition(op, rep.decomposition_n);

  const ContractionCheck cc = verify_contraction(op, rep.generator, opts.trials, opts.seed);
  rep.contraction_trial_margin = cc.margin;
  rep.expansion_identity_residual = cc.identity_residual;

  // Closedness constants are quoted for the generator scaled to leading
  // coefficient one (so diagonal spaces report plain monomial norms).
  const CoeffVector b1(rep.generator.coeffs() /
                       detail::leading_significant(rep.generator.coeffs()));
  rep.closedness = check_closedness(op, b1, std::min<Index>(opts.n_max, klen - 1),
                                    opts.delta_floor);
  return rep;
}

}  // namespace subhardy
