#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "subhardy/analysis.hpp"

namespace subhardy {

using nlohmann::json;

/// Numbers travel as decimal strings with 17 significant digits so reports
/// round-trip doubles exactly and diff cleanly across platforms.
inline std::string num_str(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

inline double num_from(const json& j) {
  if (j.is_string()) return std::stod(j.get<std::string>());
  return j.get<double>();
}

inline json complex_json(const Complex& z) {
  return json::array({num_str(z.real()), num_str(z.imag())});
}

inline Complex complex_from(const json& j) {
  if (j.is_array()) return Complex(num_from(j.at(0)), num_from(j.at(1)));
  return Complex(num_from(j), 0.0);
}

inline json poly_json(const CoeffVector& f) {
  json a = json::array();
  for (Index n = 0; n < f.ambient_dim(); ++n) a.push_back(complex_json(f.coeff(n)));
  return a;
}

inline json vector_json(const VectorXd& v) {
  json a = json::array();
  for (Index n = 0; n < v.size(); ++n) a.push_back(num_str(v[n]));
  return a;
}

inline json cond_i_json(const CondIVerdict& v) {
  json j{{"holds", v.holds},
         {"delta_max", num_str(v.delta_max)},
         {"sup_ratio", num_str(v.sup_ratio)}};
  if (v.witness) j["witness"] = poly_json(*v.witness);
  return j;
}

inline json cond_ii_json(const CondIIVerdict& v) {
  json j{{"holds", v.holds},
         {"n_checked", v.n_checked},
         {"max_residual", num_str(v.max_residual)}};
  if (v.witness_power) j["witness_power"] = *v.witness_power;
  if (v.witness) j["witness"] = poly_json(*v.witness);
  return j;
}

inline json ine1_json(const Ine1Verdict& v) {
  json j{{"holds", v.holds},
         {"n_checked", v.n_checked},
         {"delta_max", num_str(v.delta_max)},
         {"sup_ratio", num_str(v.sup_ratio)}};
  if (v.witness_power) j["witness_power"] = *v.witness_power;
  if (v.witness) j["witness"] = poly_json(*v.witness);
  return j;
}

inline json shimorin_json(const ShimorinVerdict& v) {
  json j{{"holds", v.holds},
         {"lambda_min", num_str(v.lambda_min)},
         {"lhs", num_str(v.lhs)},
         {"rhs", num_str(v.rhs)}};
  if (v.witness_x) j["witness_x"] = poly_json(*v.witness_x);
  if (v.witness_y) j["witness_y"] = poly_json(*v.witness_y);
  return j;
}

inline json closedness_json(const ClosednessVerdict& v) {
  return json{{"c_low", num_str(v.c_low)},
              {"c_high", num_str(v.c_high)},
              {"ine1_delta", num_str(v.ine1_delta)},
              {"delta_floor", num_str(v.delta_floor)},
              {"n_checked", v.n_checked},
              {"norm_holds", v.norm_holds},
              {"ine1_holds", v.ine1_holds},
              {"equivalent", v.equivalent}};
}

inline json structure_json(const StructureReport& s) {
  return json{{"vanishing_order", s.vanishing_order},
              {"deflation_residual", num_str(s.deflation_residual)},
              {"wandering_dim", s.wandering_dim},
              {"generator", poly_json(s.generator)},
              {"orbit_norms", vector_json(s.orbit_norms)},
              {"shift_weights", vector_json(s.shift_weights)},
              {"orbit_orthogonality", num_str(s.orbit_orthogonality)},
              {"density_gap", num_str(s.density_gap)},
              {"decomposition_n", s.decomposition_n},
              {"decomposition_residual", num_str(s.decomposition_residual)},
              {"contraction_margin", num_str(s.contraction_margin)},
              {"contraction_trial_margin", num_str(s.contraction_trial_margin)},
              {"expansion_identity_residual", num_str(s.expansion_identity_residual)},
              {"closedness", closedness_json(s.closedness)},
              {"conclusions_hold", s.conclusions_hold()}};
}

inline json report_json(const AnalysisResult& r) {
  json j{{"schema", 1},
         {"space", json{{"name", r.space_name},
                        {"kind", r.kind},
                        {"ambient_dim", r.ambient_dim},
                        {"dim", r.dim}}},
         {"options",
          json{{"n_max", r.options.n_max},
               {"decomposition_n", r.options.decomposition_n},
               {"trials", r.options.trials},
               {"seed", r.options.seed},
               {"delta_floor", num_str(r.options.delta_floor)},
               {"require_ine1", r.options.require_ine1},
               {"require_shimorin", r.options.require_shimorin}}},
         {"hypothesis", json{{"cond_i", cond_i_json(r.hypothesis.cond_i)},
                             {"cond_ii", cond_ii_json(r.hypothesis.cond_ii)},
                             {"ine1", ine1_json(r.hypothesis.ine1)},
                             {"shimorin_1", shimorin_json(r.hypothesis.shimorin_1)},
                             {"shimorin_2", shimorin_json(r.hypothesis.shimorin_2)}}},
         {"accepted", r.accepted}};
  if (r.options.delta) j["options"]["delta"] = num_str(*r.options.delta);
  if (r.structure) j["structure"] = structure_json(*r.structure);
  if (r.structure_error) j["structure_error"] = *r.structure_error;
  return j;
}

/// Space files: {"kind": "diagonal", "beta": [...]} or
/// {"kind": "gram", "basis": [[...], ...], "gram": [[...], ...]} with
/// matrices given row by row and complex entries as [re, im].
inline SpaceVariant space_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "diagonal") {
    const json& b = j.at("beta");
    VectorXd beta(b.size());
    for (size_t n = 0; n < b.size(); ++n)
      beta[static_cast<Index>(n)] = num_from(b[n]);
    return DiagonalSpace(WeightSequence(std::move(beta)));
  }
  if (kind == "gram") {
    const json& bj = j.at("basis");
    const json& gj = j.at("gram");
    const Index rows = static_cast<Index>(bj.size());
    const Index cols = rows > 0 ? static_cast<Index>(bj.at(0).size()) : 0;
    MatrixXcd basis(rows, cols);
    for (Index r = 0; r < rows; ++r)
      for (Index c = 0; c < cols; ++c)
        basis(r, c) = complex_from(bj.at(static_cast<size_t>(r)).at(static_cast<size_t>(c)));
    const Index m = static_cast<Index>(gj.size());
    MatrixXcd gram(m, m);
    for (Index r = 0; r < m; ++r)
      for (Index c = 0; c < m; ++c)
        gram(r, c) = complex_from(gj.at(static_cast<size_t>(r)).at(static_cast<size_t>(c)));
    return GramSpace(std::move(basis), std::move(gram));
  }
  throw InvalidSpace("space kind must be 'diagonal' or 'gram'");
}

inline SpaceVariant load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open space file: " + path);
  json j;
  in >> j;
  return space_from_json(j);
}

inline std::string poly_str(const CoeffVector& f, Index max_terms = 6) {
  std::ostringstream os;
  Index shown = 0;
  for (Index n = 0; n < f.ambient_dim() && shown < max_terms; ++n) {
    const Complex z = f.coeff(n);
    if (std::abs(z) < 1e-12) continue;
    if (shown > 0) os << " + ";
    os << "(" << num_str(z.real());
    if (z.imag() != 0.0) os << (z.imag() < 0 ? " - " : " + ") << num_str(std::abs(z.imag())) << "i";
    os << ")";
    if (n == 1) os << " z";
    if (n > 1) os << " z^" << n;
    ++shown;
  }
  if (shown == 0) os << "0";
  return os.str();
}

inline std::string render_text(const AnalysisResult& r) {
  std::ostringstream os;
  const auto flag = [](bool b) { return b ? "holds" : "FAILS"; };
  os << "space: " << r.space_name << " (" << r.kind << ", ambient " << r.ambient_dim
     << ", dim " << r.dim << ")\n";
  const HypothesisReport& h = r.hypothesis;
  os << "norm bounds (i):        " << flag(h.cond_i.holds)
     << "  delta_max=" << num_str(h.cond_i.delta_max)
     << "  sup=" << num_str(h.cond_i.sup_ratio) << "\n";
  if (h.cond_i.witness) os << "  witness: " << poly_str(*h.cond_i.witness) << "\n";
  os << "range containment (ii): " << flag(h.cond_ii.holds)
     << "  max_residual=" << num_str(h.cond_ii.max_residual) << "  n<=" << h.cond_ii.n_checked
     << "\n";
  if (h.cond_ii.witness)
    os << "  witness (power " << *h.cond_ii.witness_power
       << "): " << poly_str(*h.cond_ii.witness) << "\n";
  os << "uniform power bounds:   " << flag(h.ine1.holds)
     << "  delta_max=" << num_str(h.ine1.delta_max) << "  n<=" << h.ine1.n_checked << "\n";
  os << "two-step inequality:    " << flag(h.shimorin_1.holds)
     << "  lambda_min=" << num_str(h.shimorin_1.lambda_min);
  if (!h.shimorin_1.holds && h.shimorin_1.witness_x)
    os << "  at x=" << poly_str(*h.shimorin_1.witness_x) << ": lhs="
       << num_str(h.shimorin_1.lhs) << " > rhs=" << num_str(h.shimorin_1.rhs);
  os << "\n";
  os << "two-vector inequality:  " << flag(h.shimorin_2.holds)
     << "  lambda_min=" << num_str(h.shimorin_2.lambda_min);
  if (!h.shimorin_2.holds && h.shimorin_2.witness_x)
    os << "  at x=" << poly_str(*h.shimorin_2.witness_x)
       << ", y=" << poly_str(*h.shimorin_2.witness_y) << ": lhs="
       << num_str(h.shimorin_2.lhs) << " > rhs=" << num_str(h.shimorin_2.rhs);
  os << "\n";
  if (r.structure) {
    const StructureReport& s = *r.structure;
    os << "wandering dim: " << s.wandering_dim << "   vanishing order: " << s.vanishing_order
       << "\n";
    os << "generator b = " << poly_str(s.generator) << "\n";
    os << "weights (first): ";
    for (Index k = 0; k < std::min<Index>(6, s.shift_weights.size()); ++k)
      os << num_str(s.shift_weights[k]) << " ";
    os << "\n";
    os << "decomposition residual: " << num_str(s.decomposition_residual)
       << "   contraction margin: " << num_str(s.contraction_margin) << "\n";
    os << "closedness: c_low=" << num_str(s.closedness.c_low)
       << " c_high=" << num_str(s.closedness.c_high)
       << " ine1_delta=" << num_str(s.closedness.ine1_delta) << " ("
       << (s.closedness.equivalent ? "verdicts agree" : "VERDICTS SPLIT") << ")\n";
  } else if (r.structure_error) {
    os << "structure: not extracted (" << *r.structure_error << ")\n";
  } else {
    os << "structure: skipped (core hypotheses fail)\n";
  }
  os << "result: " << (r.accepted ? "ACCEPTED" : "REJECTED") << "\n";
  return os.str();
}

}  // namespace subhardy
