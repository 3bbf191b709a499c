#include <catch2/catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include <json.hpp>

#ifndef SUBHARDY_CLI_PATH
#error "SUBHARDY_CLI_PATH must point at the command-line binary"
#endif

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + SUBHARDY_CLI_PATH + "\" " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("analyze prints verdicts and encodes them in the exit code", "[cli]") {
  const RunResult ok = run_cli("analyze --space paper-alternating");
  INFO(ok.output);
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "result: ACCEPTED"));
  CHECK(contains(ok.output, "two-step inequality:    FAILS"));
  CHECK(contains(ok.output, "wandering dim: 1"));

  const RunResult bad = run_cli("analyze --space cond2-breaker");
  INFO(bad.output);
  CHECK(bad.exit_code == 2);
  CHECK(contains(bad.output, "result: REJECTED"));
  CHECK(contains(bad.output, "range containment (ii): FAILS"));

  const RunResult unknown = run_cli("analyze --space nope");
  CHECK(unknown.exit_code == 1);
  CHECK(contains(unknown.output, "error:"));
  CHECK(contains(unknown.output, "unknown catalog entry"));

  const RunResult none = run_cli("analyze");
  CHECK(none.exit_code == 1);
  CHECK(contains(none.output, "analyze needs"));
}

TEST_CASE("analyze emits machine-readable reports", "[cli]") {
  const RunResult r = run_cli("analyze --space paper-alternating --dim 16 --json");
  INFO(r.output);
  REQUIRE(r.exit_code == 0);
  REQUIRE(!r.output.empty());
  CHECK(r.output[0] == '{');
  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j.at("schema").get<int>() == 1);
  CHECK(j.at("accepted").get<bool>());
  CHECK(j.at("space").at("dim").get<long>() == 16);
  CHECK_FALSE(j.at("hypothesis").at("shimorin_2").at("holds").get<bool>());

  const std::string out_path = "cli_report_out.json";
  const RunResult w =
      run_cli("analyze --space classical-h2 --dim 12 --out " + out_path);
  REQUIRE(w.exit_code == 0);
  CHECK(contains(w.output, "result: ACCEPTED"));  // text still goes to stdout
  std::ifstream in(out_path);
  REQUIRE(in.good());
  nlohmann::json file_json;
  in >> file_json;
  in.close();
  std::remove(out_path.c_str());
  CHECK(file_json.at("schema").get<int>() == 1);
  CHECK(file_json.at("space").at("name").get<std::string>() == "classical-h2");
}

TEST_CASE("analyze reads space description files", "[cli]") {
  const std::string path = "cli_space_in.json";
  {
    std::ofstream out(path);
    out << R"({"kind": "diagonal",
               "beta": ["1", "1", "0.5", "0.5", "0.25", "0.25", "0.125", "0.125"]})";
  }
  const RunResult r = run_cli("analyze --file " + path + " --nmax 4");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "result: ACCEPTED"));

  const RunResult clash = run_cli("analyze --file " + path + " --dim 8");
  CHECK(clash.exit_code == 1);
  CHECK(contains(clash.output, "applies to catalog spaces"));
  std::remove(path.c_str());
}

TEST_CASE("catalog lists the built-in spaces", "[cli]") {
  const RunResult r = run_cli("catalog");
  CHECK(r.exit_code == 0);
  for (const char* name : {"classical-h2", "paper-alternating", "paper-n3",
                           "blaschke-model", "cond2-breaker", "vanishing-order"})
    CHECK(contains(r.output, name));

  const RunResult n3 = run_cli("catalog --show paper-n3 --dim 8");
  INFO(n3.output);
  CHECK(n3.exit_code == 0);
  CHECK(contains(n3.output, "beta:"));
  CHECK(contains(n3.output, "1.4422495703074083"));  // (0+3)^{1/3}

  const RunResult model = run_cli("catalog --show blaschke-model");
  CHECK(model.exit_code == 0);
  CHECK(contains(model.output, "basis: 32 x 16"));
  CHECK(contains(model.output, "gram: 16 x 16"));
}

TEST_CASE("verify runs the frozen self-checks", "[cli]") {
  const RunResult r = run_cli("verify --entry classical-h2");
  INFO(r.output);
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "[PASS] classical-h2:"));
  CHECK(!contains(r.output, "[FAIL]"));

  const RunResult j = run_cli("verify --entry paper-alternating --json");
  REQUIRE(j.exit_code == 0);
  const nlohmann::json parsed = nlohmann::json::parse(j.output);
  CHECK(parsed.at("schema").get<int>() == 1);
  CHECK(parsed.at("entries").at(0).at("all_pass").get<bool>());

  const RunResult unknown = run_cli("verify --entry nope");
  CHECK(unknown.exit_code == 1);
  CHECK(contains(unknown.output, "unknown catalog entry"));
}
