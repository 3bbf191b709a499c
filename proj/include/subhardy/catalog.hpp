#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "subhardy/structure.hpp"

namespace subhardy {

/// Coefficients of a finite Blaschke product with the given zeros, truncated
/// to the window.  The full series has unit classical norm, so the discarded
/// mass 1 - ||c||^2 must stay below tail_tol (pass tail_tol >= 1 to accept
/// any truncation).
inline CoeffVector blaschke_coeffs(const std::vector<Complex>& zeros, Index dim,
                                   double tail_tol = 1e-9) {
  if (dim < 1) throw DimensionMismatch("window must be positive");
  VectorXcd prod = VectorXcd::Zero(dim);
  prod[0] = 1.0;
  for (const Complex& a : zeros) {
    const double r = std::abs(a);
    if (r >= 1.0) throw InvalidSpace("Blaschke zeros must lie inside the unit disk");
    VectorXcd factor = VectorXcd::Zero(dim);
    if (r == 0.0) {
      if (dim > 1) factor[1] = 1.0;  // zero at the origin: the factor is z itself
    } else {
      const Complex u = r / a;  // unimodular normalization, phi(0) = r > 0
      factor[0] = u * a;
      const Complex ca = std::conj(a);
      Complex pw = 1.0;
      for (Index n = 1; n < dim; ++n) {
        factor[n] = u * pw * (r * r - 1.0);
        pw *= ca;
      }
    }
    // Truncated Cauchy product is exact below the window.
    VectorXcd next = VectorXcd::Zero(dim);
    for (Index n = 0; n < dim; ++n)
      for (Index k = 0; k <= n; ++k) next[n] += prod[k] * factor[n - k];
    prod = next;
  }
  const double tail = 1.0 - prod.squaredNorm();
  if (tail > tail_tol)
    throw BudgetExceeded("truncation drops too much of the Blaschke series; enlarge the window");
  return CoeffVector(std::move(prod));
}

/// beta = 1, 1, 1/2, 1/2, 1/4, ... : norms halve on every other step.  All
/// values are exact dyadic doubles.
inline WeightSequence alternating_beta(Index dim) {
  VectorXd b(dim);
  for (Index n = 0; n < dim; ++n) b[n] = std::ldexp(1.0, -static_cast<int>(n / 2));
  return WeightSequence(std::move(b));
}

/// beta_n = (n+3)^{1/(n+3)}: strictly decreasing to 1, so every monomial norm
/// stays at least 1 and multiplication by the extracted generator has closed
/// range.
inline WeightSequence decaying_root_beta(Index dim) {
  VectorXd b(dim);
  for (Index n = 0; n < dim; ++n) {
    const double x = static_cast<double>(n + 3);
    b[n] = std::pow(x, 1.0 / x);
  }
  return WeightSequence(std::move(b));
}

/// Random nonincreasing norming sequence with beta_0 = 1 and all values in
/// [delta, 1].  Deterministic for a fixed seed.
inline WeightSequence random_monotone_beta(std::uint64_t seed, Index dim, double delta) {
  if (!(delta > 0.0 && delta < 1.0))
    throw InvalidSpace("lower bound must lie strictly between 0 and 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(delta, 1.0);
  std::vector<double> draws(static_cast<size_t>(dim - 1));
  for (double& d : draws) d = uni(rng);
  std::sort(draws.begin(), draws.end(), std::greater<double>());
  VectorXd b(dim);
  b[0] = 1.0;
  for (Index n = 1; n < dim; ++n) b[n] = draws[static_cast<size_t>(n - 1)];
  return WeightSequence(std::move(b));
}

// Range-containment breaker: geometric norming beta_n = rho^n with a single
// Hermitian coupling epsilon between the constant and z^2 directions.  The
// coupling leaves the two-sided norm bounds intact (sigma in [0.77, 0.96])
// but pushes T* T^2 z out of the range of T with relative distance equal to
// epsilon.  Larger couplings (0.3 at this rho) break the upper norm bound.
inline constexpr double kBreakerRho = 0.85;
inline constexpr double kBreakerEps = 0.20;

inline GramSpace containment_breaker_space(Index dim, double rho = kBreakerRho,
                                           double eps = kBreakerEps) {
  if (dim < 4) throw DimensionMismatch("breaker space needs a window of at least 4");
  MatrixXcd gram = MatrixXcd::Zero(dim, dim);
  VectorXd beta(dim);
  for (Index n = 0; n < dim; ++n) beta[n] = std::pow(rho, static_cast<double>(n));
  for (Index n = 0; n < dim; ++n) gram(n, n) = beta[n] * beta[n];
  gram(0, 2) = eps * beta[0] * beta[2];
  gram(2, 0) = eps * beta[0] * beta[2];
  return GramSpace(MatrixXcd::Identity(dim, dim), std::move(gram));
}

/// z^2 times the alternating space: every basis vector vanishes to order two
/// at the origin, deflation recovers the alternating space unchanged.
inline GramSpace shifted_alternating_space(Index dim) {
  if (dim < 4) throw DimensionMismatch("window too small for the order-two space");
  const Index m = dim - 2;
  const WeightSequence beta = alternating_beta(m);
  MatrixXcd basis = MatrixXcd::Zero(dim, m);
  MatrixXcd gram = MatrixXcd::Zero(m, m);
  for (Index k = 0; k < m; ++k) {
    basis(k + 2, k) = 1.0;
    gram(k, k) = beta.beta(k) * beta.beta(k);
  }
  return GramSpace(std::move(basis), std::move(gram));
}

inline GramSpace blaschke_model_space(Index dim) {
  if (dim < 2) throw DimensionMismatch("window too small for the model space");
  const CoeffVector b = blaschke_coeffs({Complex(0.5, 0.0)}, dim, 1.0);
  return model_orbit_space(b, dim / 2);
}

struct CatalogEntry {
  std::string name;
  std::string kind;  // "diagonal" or "gram"
  Index default_dim;
  std::string description;
  Tolerances tol;
  SpaceVariant (*build)(Index dim);
};

inline const std::vector<CatalogEntry>& catalog_entries() {
  static const std::vector<CatalogEntry> entries = [] {
    Tolerances flat;
    flat.tail = 1.0;  // model metrics treat dropped tails as part of the model
    std::vector<CatalogEntry> v;
    v.push_back({"classical-h2", "diagonal", 16,
                 "Unweighted shift: every monomial has norm one and every check "
                 "passes with equality.",
                 Tolerances{},
                 [](Index d) { return SpaceVariant(DiagonalSpace(WeightSequence::ones(d))); }});
    v.push_back({"paper-alternating", "diagonal", 32,
                 "Monomial norms halve on every other step: a contraction bounded "
                 "below whose concavity-type inequalities both fail and whose "
                 "uniform power bounds decay to zero.",
                 Tolerances{},
                 [](Index d) { return SpaceVariant(DiagonalSpace(alternating_beta(d))); }});
    v.push_back({"paper-n3", "diagonal", 64,
                 "Norming sequence (n+3)^{1/(n+3)} decreasing to one: all monomial "
                 "norms stay >= 1, both concavity-type inequalities fail by a hair, "
                 "yet the generator multiplication has closed range.",
                 Tolerances{},
                 [](Index d) { return SpaceVariant(DiagonalSpace(decaying_root_beta(d))); }});
    v.push_back({"blaschke-model", "gram", 32,
                 "Shift orbit of the degree-one Blaschke factor with zero 1/2 under "
                 "the flat multiplier-model metric: an isometric shift on the "
                 "truncated orbit.",
                 flat,
                 [](Index d) { return SpaceVariant(blaschke_model_space(d)); }});
    v.push_back({"cond2-breaker", "gram", 12,
                 "Geometric norming with a constant-to-z^2 metric coupling tuned so "
                 "the two-sided norm bounds hold but the range containment fails.",
                 Tolerances{},
                 [](Index d) { return SpaceVariant(containment_breaker_space(d)); }});
    v.push_back({"vanishing-order", "gram", 32,
                 "The alternating space multiplied by z^2: all basis vectors vanish "
                 "to order two at the origin and deflation recovers the alternating "
                 "space without changing the operator.",
                 Tolerances{},
                 [](Index d) { return SpaceVariant(shifted_alternating_space(d)); }});
    return v;
  }();
  return entries;
}

inline const CatalogEntry& catalog_entry(const std::string& name) {
  for (const CatalogEntry& e : catalog_entries())
    if (e.name == name) return e;
  std::string names;
  for (const CatalogEntry& e : catalog_entries()) names += " " + e.name;
  throw UnknownEntry("unknown catalog entry '" + name + "'; available:" + names);
}

inline ShiftOperator build_operator(const SpaceVariant& space, const Tolerances& tol = {}) {
  if (const DiagonalSpace* d = std::get_if<DiagonalSpace>(&space))
    return ShiftOperator::build(*d, tol);
  return ShiftOperator::build(std::get<GramSpace>(space), tol);
}

struct FactCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct EntryVerification {
  std::string entry;
  std::vector<FactCheck> checks;
  bool all_pass() const {
    for (const FactCheck& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline void fact_near(std::vector<FactCheck>& out, const std::string& name, double got,
                      double want, double tol) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "got %.17g, expected %.17g (tol %.3g)", got, want, tol);
  out.push_back({name, std::abs(got - want) <= tol, buf});
}

inline void fact_below(std::vector<FactCheck>& out, const std::string& name, double got,
                       double bound) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "got %.17g, bound %.3g", got, bound);
  out.push_back({name, got <= bound, buf});
}

inline void fact_above(std::vector<FactCheck>& out, const std::string& name, double got,
                       double bound) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "got %.17g, lower bound %.3g", got, bound);
  out.push_back({name, got >= bound, buf});
}

inline void fact_true(std::vector<FactCheck>& out, const std::string& name, bool got,
                      bool want) {
  out.push_back({name, got == want,
                 std::string("got ") + (got ? "true" : "false") + ", expected " +
                     (want ? "true" : "false")});
}

inline void fact_count(std::vector<FactCheck>& out, const std::string& name, Index got,
                       Index want) {
  out.push_back({name, got == want,
                 "got " + std::to_string(got) + ", expected " + std::to_string(want)});
}

/// Compare a polynomial against a sparse list of expected coefficients; all
/// unlisted coefficients must be below tol.
inline void fact_poly(std::vector<FactCheck>& out, const std::string& name,
                      const CoeffVector& got,
                      const std::vector<std::pair<Index, Complex>>& want, double tol) {
  double err = 0.0;
  for (Index n = 0; n < got.ambient_dim(); ++n) {
    Complex expect(0);
    for (const auto& [k, v] : want)
      if (k == n) expect = v;
    err = std::max(err, std::abs(got.coeff(n) - expect));
  }
  char buf[160];
  std::snprintf(buf, sizeof buf, "max coefficient error %.3g (tol %.3g)", err, tol);
  out.push_back({name, err <= tol, buf});
}

}  // namespace detail

/// Run the frozen self-checks of one catalog entry at its default size.
inline EntryVerification verify_entry(const std::string& name) {
  using detail::fact_above;
  using detail::fact_below;
  using detail::fact_count;
  using detail::fact_near;
  using detail::fact_poly;
  using detail::fact_true;

  const CatalogEntry& e = catalog_entry(name);
  const SpaceVariant space = e.build(e.default_dim);
  const ShiftOperator op = build_operator(space, e.tol);
  const HypothesisReport hyp = run_hypothesis_checks(op, {});
  EntryVerification ver{name, {}};
  std::vector<FactCheck>& c = ver.checks;

  if (name == "classical-h2") {
    fact_true(c, "norm bounds hold", hyp.cond_i.holds, true);
    fact_near(c, "lower shift bound", hyp.cond_i.delta_max, 1.0, 1e-12);
    fact_near(c, "upper shift bound", hyp.cond_i.sup_ratio, 1.0, 1e-12);
    fact_true(c, "range containment holds", hyp.cond_ii.holds, true);
    fact_below(c, "containment residual", hyp.cond_ii.max_residual, 1e-12);
    fact_true(c, "two-step inequality holds", hyp.shimorin_1.holds, true);
    fact_below(c, "two-step equality margin",
               std::abs(hyp.shimorin_1.lhs - hyp.shimorin_1.rhs), 1e-10);
    fact_true(c, "two-vector inequality holds", hyp.shimorin_2.holds, true);
    fact_near(c, "uniform power bound", hyp.ine1.delta_max, 1.0, 1e-12);
    const StructureReport st = extract_generator(op, hyp.core_hold());
    fact_count(c, "wandering dimension", st.wandering_dim, 1);
    fact_count(c, "vanishing order", st.vanishing_order, 0);
    fact_poly(c, "generator is the constant one", st.generator, {{0, 1.0}}, 1e-10);
    fact_below(c, "weight spread around one",
               (st.shift_weights.array() - 1.0).abs().maxCoeff(), 1e-10);
    fact_below(c, "decomposition residual", st.decomposition_residual, 1e-10);
    fact_below(c, "contraction margin", st.contraction_margin, 1e-10);
    fact_below(c, "trial contraction margin", st.contraction_trial_margin, 1e-10);
    fact_below(c, "expansion identity residual", st.expansion_identity_residual, 1e-10);
    fact_below(c, "orbit orthogonality", st.orbit_orthogonality, 1e-10);
    fact_near(c, "orbit density gap", st.density_gap, 0.0, 0.0);
    fact_near(c, "closedness lower constant", st.closedness.c_low, 1.0, 1e-10);
    fact_near(c, "closedness upper constant", st.closedness.c_high, 1.0, 1e-10);
    fact_true(c, "closedness verdicts agree", st.closedness.equivalent, true);
  } else if (name == "paper-alternating") {
    fact_true(c, "norm bounds hold", hyp.cond_i.holds, true);
    fact_near(c, "lower shift bound", hyp.cond_i.delta_max, 0.5, 1e-12);
    fact_near(c, "upper shift bound", hyp.cond_i.sup_ratio, 1.0, 1e-12);
    fact_true(c, "range containment holds", hyp.cond_ii.holds, true);
    fact_below(c, "containment residual", hyp.cond_ii.max_residual, 1e-12);
    fact_true(c, "two-step inequality fails", hyp.shimorin_1.holds, false);
    fact_near(c, "two-step witness lhs", hyp.shimorin_1.lhs, 1.25, 1e-12);
    fact_near(c, "two-step witness rhs", hyp.shimorin_1.rhs, 0.5, 1e-12);
    fact_poly(c, "two-step witness is z", *hyp.shimorin_1.witness_x, {{1, 1.0}}, 1e-9);
    fact_true(c, "two-vector inequality fails", hyp.shimorin_2.holds, false);
    fact_near(c, "two-vector witness lhs", hyp.shimorin_2.lhs, 4.0, 1e-12);
    fact_near(c, "two-vector witness rhs", hyp.shimorin_2.rhs, 2.5, 1e-12);
    fact_poly(c, "two-vector witness x is 1", *hyp.shimorin_2.witness_x, {{0, 1.0}}, 1e-9);
    fact_poly(c, "two-vector witness y is z", *hyp.shimorin_2.witness_y, {{1, 1.0}}, 1e-9);
    fact_near(c, "uniform power bound at horizon 8", hyp.ine1.delta_max,
              std::ldexp(1.0, -4), 1e-12);
    const StructureReport st = extract_generator(op, hyp.core_hold());
    fact_count(c, "wandering dimension", st.wandering_dim, 1);
    fact_count(c, "vanishing order", st.vanishing_order, 0);
    fact_poly(c, "generator is the constant one", st.generator, {{0, 1.0}}, 1e-10);
    double werr = 0.0;
    for (Index k = 0; k < st.shift_weights.size(); ++k)
      werr = std::max(werr, std::abs(st.shift_weights[k] - (k % 2 == 0 ? 1.0 : 0.5)));
    fact_below(c, "weights alternate 1, 1/2", werr, 1e-10);
    fact_below(c, "decomposition residual", st.decomposition_residual, 1e-10);
    fact_below(c, "contraction margin", st.contraction_margin, 1e-10);
    fact_below(c, "expansion identity residual", st.expansion_identity_residual, 1e-10);
    fact_near(c, "closedness lower constant at horizon 8", st.closedness.c_low,
              std::ldexp(1.0, -4), 1e-12);
    fact_near(c, "closedness upper constant", st.closedness.c_high, 1.0, 1e-12);
    fact_true(c, "closedness verdicts agree", st.closedness.equivalent, true);
  } else if (name == "paper-n3") {
    fact_true(c, "norm bounds hold", hyp.cond_i.holds, true);
    fact_near(c, "lower shift bound", hyp.cond_i.delta_max,
              std::pow(5.0, 0.2) / std::pow(4.0, 0.25), 1e-12);
    fact_below(c, "shift is a strict contraction", hyp.cond_i.sup_ratio, 1.0);
    fact_true(c, "range containment holds", hyp.cond_ii.holds, true);
    fact_below(c, "containment residual", hyp.cond_ii.max_residual, 1e-12);
    fact_true(c, "two-step inequality fails", hyp.shimorin_1.holds, false);
    fact_near(c, "two-step witness lhs", hyp.shimorin_1.lhs,
              std::pow(6.0, 1.0 / 3.0) + 2.0, 1e-12);
    fact_near(c, "two-step witness rhs", hyp.shimorin_1.rhs, 2.0 * std::pow(5.0, 0.4),
              1e-12);
    fact_poly(c, "two-step witness is z", *hyp.shimorin_1.witness_x, {{1, 1.0}}, 1e-9);
    fact_true(c, "two-vector inequality fails", hyp.shimorin_2.holds, false);
    fact_near(c, "two-vector witness lhs", hyp.shimorin_2.lhs, 8.0, 1e-12);
    fact_near(c, "two-vector witness rhs", hyp.shimorin_2.rhs,
              2.0 * (std::pow(3.0, 2.0 / 3.0) + std::pow(5.0, 0.4)), 1e-12);
    fact_near(c, "uniform power bound at horizon 8", hyp.ine1.delta_max,
              std::pow(11.0, 1.0 / 11.0) / std::pow(3.0, 1.0 / 3.0), 1e-12);
    const StructureReport st = extract_generator(op, hyp.core_hold());
    fact_count(c, "wandering dimension", st.wandering_dim, 1);
    fact_count(c, "vanishing order", st.vanishing_order, 0);
    fact_poly(c, "generator is a positive constant", st.generator,
              {{0, std::pow(3.0, -1.0 / 3.0)}}, 1e-10);
    const WeightSequence beta = decaying_root_beta(e.default_dim);
    double werr = 0.0;
    for (Index k = 0; k < st.shift_weights.size(); ++k)
      werr = std::max(werr,
                      std::abs(st.shift_weights[k] - beta.beta(k + 1) / beta.beta(k)));
    fact_below(c, "weights match the norming ratios", werr, 1e-10);
    fact_below(c, "decomposition residual", st.decomposition_residual, 1e-10);
    fact_below(c, "contraction margin", st.contraction_margin, 1e-10);
    fact_below(c, "expansion identity residual", st.expansion_identity_residual, 1e-10);
    fact_near(c, "closedness lower constant at horizon 8", st.closedness.c_low,
              std::pow(11.0, 1.0 / 11.0), 1e-12);
    fact_above(c, "norms bounded below by one", st.closedness.c_low, 1.0 - 1e-12);
    fact_near(c, "closedness upper constant", st.closedness.c_high,
              std::pow(3.0, 1.0 / 3.0), 1e-12);
    fact_true(c, "closedness verdicts agree", st.closedness.equivalent, true);
  } else if (name == "blaschke-model") {
    fact_true(c, "norm bounds hold", hyp.cond_i.holds, true);
    fact_near(c, "lower shift bound", hyp.cond_i.delta_max, 1.0, 1e-10);
    fact_near(c, "upper shift bound", hyp.cond_i.sup_ratio, 1.0, 1e-10);
    fact_true(c, "range containment holds", hyp.cond_ii.holds, true);
    fact_below(c, "containment residual", hyp.cond_ii.max_residual, 1e-10);
    fact_true(c, "two-step inequality holds", hyp.shimorin_1.holds, true);
    fact_true(c, "two-vector inequality holds", hyp.shimorin_2.holds, true);
    fact_near(c, "uniform power bound", hyp.ine1.delta_max, 1.0, 1e-10);
    const StructureReport st = extract_generator(op, hyp.core_hold());
    fact_count(c, "wandering dimension", st.wandering_dim, 1);
    fact_count(c, "vanishing order", st.vanishing_order, 0);
    const CoeffVector want = blaschke_coeffs({Complex(0.5, 0.0)}, e.default_dim, 1.0);
    const VectorXcd wantn = want.coeffs() / want.coeffs().norm();
    fact_below(c, "generator matches the truncated Blaschke series",
               (st.generator.coeffs() - wantn).cwiseAbs().maxCoeff(), 1e-8);
    fact_below(c, "weight spread around one",
               (st.shift_weights.array() - 1.0).abs().maxCoeff(), 1e-10);
    fact_below(c, "decomposition residual", st.decomposition_residual, 1e-10);
    fact_below(c, "contraction margin", st.contraction_margin, 1e-10);
    fact_below(c, "trial contraction margin", st.contraction_trial_margin, 1e-10);
    fact_below(c, "expansion identity residual", st.expansion_identity_residual, 1e-10);
    fact_near(c, "orbit density gap", st.density_gap, 0.0, 0.0);
    fact_true(c, "closedness verdicts agree", st.closedness.equivalent, true);
  } else if (name == "cond2-breaker") {
    fact_true(c, "norm bounds hold", hyp.cond_i.holds, true);
    fact_above(c, "lower shift bound", hyp.cond_i.delta_max, 0.3);
    fact_below(c, "upper shift bound", hyp.cond_i.sup_ratio, 0.99);
    fact_true(c, "range containment fails", hyp.cond_ii.holds, false);
    fact_above(c, "containment residual", hyp.cond_ii.max_residual, 0.1);
    fact_below(c, "containment residual matches the coupling",
               std::abs(hyp.cond_ii.max_residual - kBreakerEps), 1e-9);
    fact_above(c, "containment fails already at the first power",
               check_condition_ii(op, 1).max_residual, 0.1);
    bool refused = false;
    try {
      extract_generator(op, hyp.core_hold());
    } catch (const HypothesesNotVerified&) {
      refused = true;
    }
    fact_true(c, "structure extraction refused", refused, true);
  } else if (name == "vanishing-order") {
    fact_true(c, "norm bounds hold", hyp.cond_i.holds, true);
    fact_near(c, "lower shift bound", hyp.cond_i.delta_max, 0.5, 1e-12);
    fact_near(c, "upper shift bound", hyp.cond_i.sup_ratio, 1.0, 1e-12);
    fact_true(c, "range containment holds", hyp.cond_ii.holds, true);
    fact_below(c, "containment residual", hyp.cond_ii.max_residual, 1e-10);
    fact_true(c, "two-step inequality fails", hyp.shimorin_1.holds, false);
    fact_near(c, "two-step witness lhs", hyp.shimorin_1.lhs, 1.25, 1e-10);
    fact_near(c, "two-step witness rhs", hyp.shimorin_1.rhs, 0.5, 1e-10);
    fact_poly(c, "two-step witness is z^3", *hyp.shimorin_1.witness_x, {{3, 1.0}}, 1e-9);
    fact_true(c, "two-vector inequality fails", hyp.shimorin_2.holds, false);
    fact_near(c, "two-vector witness lhs", hyp.shimorin_2.lhs, 4.0, 1e-10);
    fact_near(c, "two-vector witness rhs", hyp.shimorin_2.rhs, 2.5, 1e-10);
    fact_near(c, "uniform power bound at horizon 8", hyp.ine1.delta_max,
              std::ldexp(1.0, -4), 1e-12);
    const StructureReport st = extract_generator(op, hyp.core_hold());
    fact_count(c, "vanishing order", st.vanishing_order, 2);
    fact_below(c, "deflation leaves operator and metric unchanged",
               st.deflation_residual, 1e-12);
    fact_count(c, "wandering dimension", st.wandering_dim, 1);
    fact_poly(c, "generator is z^2", st.generator, {{2, 1.0}}, 1e-10);
    double werr = 0.0;
    for (Index k = 0; k < st.shift_weights.size(); ++k)
      werr = std::max(werr, std::abs(st.shift_weights[k] - (k % 2 == 0 ? 1.0 : 0.5)));
    fact_below(c, "weights alternate 1, 1/2", werr, 1e-10);
    fact_below(c, "decomposition residual", st.decomposition_residual, 1e-10);
    fact_below(c, "contraction margin", st.contraction_margin, 1e-10);
    fact_near(c, "closedness lower constant at horizon 8", st.closedness.c_low,
              std::ldexp(1.0, -4), 1e-12);
    fact_true(c, "closedness verdicts agree", st.closedness.equivalent, true);
  } else {
    throw UnknownEntry("no self-checks registered for entry '" + name + "'");
  }
  return ver;
}

}  // namespace subhardy
