#pragma once

#include <optional>
#include <string>

#include "subhardy/catalog.hpp"

namespace subhardy {

struct AnalysisOptions {
  Index n_max = 8;
  std::optional<double> delta;  // required lower shift bound, if any
  Index decomposition_n = 3;
  Index trials = 64;
  std::uint64_t seed = kDefaultSeed;
  double delta_floor = 0.05;
  bool require_ine1 = false;
  bool require_shimorin = false;
};

struct AnalysisResult {
  std::string space_name;
  std::string kind;  // "diagonal" or "gram"
  Index ambient_dim = 0;
  Index dim = 0;
  AnalysisOptions options;
  HypothesisReport hypothesis;
  std::optional<StructureReport> structure;
  std::optional<std::string> structure_error;
  bool accepted = false;
};

/// Full pipeline: build the shift, check the hypotheses, and when the two
/// core ones hold, extract the generator and verify the conclusions.
inline AnalysisResult analyze(const SpaceVariant& space, const AnalysisOptions& opts = {},
                              const Tolerances& tol = {},
                              const std::string& name = "custom") {
  AnalysisResult r;
  r.space_name = name;
  r.kind = std::holds_alternative<DiagonalSpace>(space) ? "diagonal" : "gram";
  r.options = opts;
  const ShiftOperator op = build_operator(space, tol);
  r.ambient_dim = op.space().ambient_dim();
  r.dim = op.dim();
  r.hypothesis = run_hypothesis_checks(op, {opts.n_max, opts.delta});
  if (r.hypothesis.core_hold()) {
    StructureOptions so;
    so.n_max = opts.n_max;
    so.decomposition_n = opts.decomposition_n;
    so.trials = opts.trials;
    so.seed = opts.seed;
    so.delta_floor = opts.delta_floor;
    try {
      r.structure = extract_generator(op, true, so);
    } catch (const Error& err) {
      r.structure_error = err.what();
    }
  }
  bool ok = r.hypothesis.core_hold() && r.structure.has_value() &&
            r.structure->conclusions_hold();
  if (opts.require_ine1) ok = ok && r.hypothesis.ine1.holds;
  if (opts.require_shimorin)
    ok = ok && r.hypothesis.shimorin_1.holds && r.hypothesis.shimorin_2.holds;
  r.accepted = ok;
  return r;
}

inline AnalysisResult analyze_entry(const std::string& name,
                                    std::optional<Index> dim = {},
                                    const AnalysisOptions& opts = {}) {
  const CatalogEntry& e = catalog_entry(name);
  return analyze(e.build(dim.value_or(e.default_dim)), opts, e.tol, name);
}

}  // namespace subhardy
