#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>

#include "subhardy/report_io.hpp"

using namespace subhardy;
using Catch::Approx;

TEST_CASE("numbers survive the decimal string round trip bit for bit", "[report-io]") {
  const double cases[] = {0.0,
                          1.0,
                          1.0 / 3.0,
                          std::ldexp(1.0, -10),
                          -0.15625,
                          std::pow(5.0, 0.2) / std::pow(4.0, 0.25),
                          6.02214076e23,
                          1e-300};
  for (double x : cases) {
    CHECK(std::stod(num_str(x)) == x);
    CHECK(num_from(json(num_str(x))) == x);
  }
  const Complex z(0.3, -1.0 / 7.0);
  CHECK(complex_from(complex_json(z)) == z);
  CHECK(complex_from(json("2.5")) == Complex(2.5, 0.0));
}

TEST_CASE("analysis reports serialize with a stable schema", "[report-io]") {
  const AnalysisResult r = analyze_entry("paper-alternating", 16);
  const json j = report_json(r);

  CHECK(j.at("schema").get<int>() == 1);
  CHECK(j.at("space").at("name").get<std::string>() == "paper-alternating");
  CHECK(j.at("space").at("kind").get<std::string>() == "diagonal");
  CHECK(j.at("space").at("dim").get<Index>() == 16);
  CHECK(j.at("accepted").get<bool>() == true);

  const json& h = j.at("hypothesis");
  CHECK(h.at("cond_i").at("holds").get<bool>());
  CHECK(num_from(h.at("cond_i").at("delta_max")) == 0.5);
  CHECK(h.at("cond_ii").at("holds").get<bool>());
  CHECK_FALSE(h.at("shimorin_1").at("holds").get<bool>());
  // Canonical witness z: first significant coefficient scaled to +1.
  const json& wx = h.at("shimorin_1").at("witness_x");
  CHECK(complex_from(wx.at(0)) == Complex(0.0, 0.0));
  CHECK(complex_from(wx.at(1)) == Complex(1.0, 0.0));

  REQUIRE(j.contains("structure"));
  CHECK(j.at("structure").at("wandering_dim").get<Index>() == 1);
  CHECK(j.at("structure").at("conclusions_hold").get<bool>());

  // The dump parses back to the identical document.
  CHECK(json::parse(j.dump()) == j);
  CHECK(json::parse(j.dump(2)) == j);
}

TEST_CASE("space files round-trip through json", "[report-io]") {
  SECTION("diagonal") {
    const WeightSequence beta = alternating_beta(12);
    json j{{"kind", "diagonal"}};
    for (Index n = 0; n < beta.size(); ++n) j["beta"].push_back(num_str(beta.beta(n)));
    const SpaceVariant s = space_from_json(j);
    const DiagonalSpace* d = std::get_if<DiagonalSpace>(&s);
    REQUIRE(d != nullptr);
    for (Index n = 0; n < 12; ++n) CHECK(d->norming().beta(n) == beta.beta(n));
    CHECK(check_condition_i(ShiftOperator::build(*d)).delta_max == 0.5);
  }

  SECTION("gram") {
    const GramSpace g = shifted_alternating_space(8);
    json j{{"kind", "gram"}};
    for (Index r = 0; r < g.ambient_dim(); ++r) {
      json row = json::array();
      for (Index c = 0; c < g.dim(); ++c) row.push_back(complex_json(g.basis()(r, c)));
      j["basis"].push_back(row);
    }
    for (Index r = 0; r < g.dim(); ++r) {
      json row = json::array();
      for (Index c = 0; c < g.dim(); ++c) row.push_back(complex_json(g.gram()(r, c)));
      j["gram"].push_back(row);
    }
    const SpaceVariant s = space_from_json(j);
    const GramSpace* back = std::get_if<GramSpace>(&s);
    REQUIRE(back != nullptr);
    CHECK((back->basis() - g.basis()).cwiseAbs().maxCoeff() == 0.0);
    CHECK((back->gram() - g.gram()).cwiseAbs().maxCoeff() == 0.0);
  }

  SECTION("rejects unknown kinds") {
    CHECK_THROWS_AS(space_from_json(json{{"kind", "multiplier"}}), InvalidSpace);
  }
}

TEST_CASE("spaces load from files and analyze like their catalog twins", "[report-io]") {
  const std::string path = "loaded_space_roundtrip.json";
  {
    const WeightSequence beta = alternating_beta(16);
    json j{{"kind", "diagonal"}};
    for (Index n = 0; n < beta.size(); ++n) j["beta"].push_back(num_str(beta.beta(n)));
    std::ofstream out(path);
    out << j.dump(2) << "\n";
  }
  const AnalysisResult loaded = analyze(load_space_file(path), {}, {}, "from-file");
  const AnalysisResult entry = analyze_entry("paper-alternating", 16);
  std::remove(path.c_str());

  CHECK(loaded.space_name == "from-file");
  CHECK(loaded.accepted == entry.accepted);
  CHECK(loaded.hypothesis.cond_i.delta_max == entry.hypothesis.cond_i.delta_max);
  CHECK(loaded.hypothesis.shimorin_1.lambda_min ==
        Approx(entry.hypothesis.shimorin_1.lambda_min).margin(1e-14));
  REQUIRE(loaded.structure.has_value());
  CHECK(loaded.structure->closedness.c_low ==
        Approx(entry.structure->closedness.c_low).margin(1e-14));

  CHECK_THROWS_AS(load_space_file("no_such_file.json"), Error);
}

TEST_CASE("text rendering states the verdicts", "[report-io]") {
  const std::string accepted = render_text(analyze_entry("paper-alternating", 16));
  CHECK(accepted.find("result: ACCEPTED") != std::string::npos);
  CHECK(accepted.find("two-step inequality:    FAILS") != std::string::npos);
  CHECK(accepted.find("wandering dim: 1") != std::string::npos);
  CHECK(accepted.find("verdicts agree") != std::string::npos);
  CHECK(accepted.find("VERDICTS SPLIT") == std::string::npos);

  const std::string rejected = render_text(analyze_entry("cond2-breaker"));
  CHECK(rejected.find("result: REJECTED") != std::string::npos);
  CHECK(rejected.find("range containment (ii): FAILS") != std::string::npos);
  CHECK(rejected.find("structure: skipped") != std::string::npos);

  CHECK(poly_str(CoeffVector::of({Complex(1), Complex(0), Complex(1)})) ==
        "(1) + (1) z^2");
  CHECK(poly_str(CoeffVector::zero(4)) == "0");
}
