// Command-line front end: analyze spaces, list the catalog, run self-checks.
//
// Exit codes: 0 all requested checks passed, 1 usage or data error,
//             2 some check failed.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "subhardy/report_io.hpp"

using namespace subhardy;

namespace {

int run_analyze(const std::string& space_name, const std::string& file,
                std::optional<long> dim, long nmax, std::optional<double> delta,
                long decomposition_n, long trials, unsigned long long seed,
                double delta_floor, bool require_ine1, bool require_shimorin,
                bool as_json, const std::string& out_path) {
  AnalysisOptions opts;
  opts.n_max = nmax;
  opts.delta = delta;
  opts.decomposition_n = decomposition_n;
  opts.trials = trials;
  opts.seed = seed;
  opts.delta_floor = delta_floor;
  opts.require_ine1 = require_ine1;
  opts.require_shimorin = require_shimorin;

  AnalysisResult result;
  if (!file.empty()) {
    SpaceVariant space = load_space_file(file);
    if (dim) throw Error("--dim applies to catalog spaces; file spaces carry their own size");
    result = analyze(space, opts, Tolerances{}, file);
  } else {
    result = analyze_entry(space_name, dim ? std::optional<Index>(*dim) : std::nullopt,
                           opts);
  }

  const json j = report_json(result);
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw Error("cannot write report to " + out_path);
    out << j.dump(2) << "\n";
  }
  if (as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << render_text(result);
  return result.accepted ? 0 : 2;
}

int run_catalog(const std::string& show, std::optional<long> dim) {
  if (show.empty()) {
    for (const CatalogEntry& e : catalog_entries()) {
      std::printf("%-18s %-9s dim %-4ld %s\n", e.name.c_str(), e.kind.c_str(),
                  long(e.default_dim), e.description.c_str());
    }
    return 0;
  }
  const CatalogEntry& e = catalog_entry(show);
  const Index d = dim ? Index(*dim) : e.default_dim;
  std::cout << e.name << " (" << e.kind << ", ambient dim " << d << ")\n"
            << e.description << "\n";
  const SpaceVariant space = e.build(d);
  if (const DiagonalSpace* ds = std::get_if<DiagonalSpace>(&space)) {
    std::cout << "beta:";
    for (Index n = 0; n < ds->ambient_dim(); ++n)
      std::cout << " " << num_str(ds->norming().beta(n));
    std::cout << "\n";
  } else {
    const GramSpace& gs = std::get<GramSpace>(space);
    std::cout << "basis: " << gs.ambient_dim() << " x " << gs.dim()
              << " coefficient matrix\n";
    for (Index j = 0; j < std::min<Index>(4, gs.dim()); ++j)
      std::cout << "  basis[" << j << "] = " << poly_str(gs.basis_vector(j)) << "\n";
    if (gs.dim() > 4) std::cout << "  ...\n";
    std::cout << "gram: " << gs.dim() << " x " << gs.dim();
    double offdiag = 0.0;
    for (Index r = 0; r < gs.dim(); ++r)
      for (Index col = 0; col < gs.dim(); ++col)
        if (r != col) offdiag = std::max(offdiag, std::abs(gs.gram()(r, col)));
    std::cout << " (max off-diagonal " << num_str(offdiag) << ")\n";
  }
  return 0;
}

int run_verify(const std::string& entry, bool as_json) {
  std::vector<std::string> names;
  if (entry.empty())
    for (const CatalogEntry& e : catalog_entries()) names.push_back(e.name);
  else
    names.push_back(entry);

  bool all = true;
  json out = json::array();
  for (const std::string& name : names) {
    const EntryVerification v = verify_entry(name);
    all = all && v.all_pass();
    if (as_json) {
      json checks = json::array();
      for (const FactCheck& f : v.checks)
        checks.push_back(json{{"name", f.name}, {"pass", f.pass}, {"detail", f.detail}});
      out.push_back(json{{"entry", name}, {"all_pass", v.all_pass()}, {"checks", checks}});
    } else {
      for (const FactCheck& f : v.checks)
        std::printf("[%s] %s: %s (%s)\n", f.pass ? "PASS" : "FAIL", name.c_str(),
                    f.name.c_str(), f.detail.c_str());
    }
  }
  if (as_json) std::cout << json{{"schema", 1}, {"entries", out}}.dump(2) << "\n";
  return all ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical toolkit for truncated shift-invariant polynomial spaces"};
  app.require_subcommand(1);

  std::string space_name, file, out_path;
  std::optional<long> dim;
  long nmax = 8, decomposition_n = 3, trials = 64;
  std::optional<double> delta;
  unsigned long long seed = kDefaultSeed;
  double delta_floor = 0.05;
  bool require_ine1 = false, require_shimorin = false, as_json = false;

  CLI::App* analyze_cmd =
      app.add_subcommand("analyze", "Check hypotheses and extract the generator");
  CLI::Option* sopt = analyze_cmd->add_option("--space", space_name, "Catalog entry name");
  CLI::Option* fopt =
      analyze_cmd->add_option("--file", file, "JSON space description file");
  sopt->excludes(fopt);
  analyze_cmd->add_option("--dim", dim,
                          "Ambient dimension (default: the entry's registered size)");
  analyze_cmd->add_option("--nmax", nmax, "Power horizon for the containment and power checks")
      ->check(CLI::PositiveNumber);
  analyze_cmd->add_option("--delta", delta, "Required lower shift bound in (0,1]");
  analyze_cmd->add_option("--decomposition-n", decomposition_n,
                          "Depth of the finite decomposition check");
  analyze_cmd->add_option("--trials", trials, "Random trials for the contraction check");
  analyze_cmd->add_option("--seed", seed, "Random seed");
  analyze_cmd->add_option("--delta-floor", delta_floor,
                          "Floor for the closedness verdicts");
  analyze_cmd->add_flag("--require-ine1", require_ine1,
                        "Count the uniform power bounds as a required check");
  analyze_cmd->add_flag("--require-shimorin", require_shimorin,
                        "Count both concavity-type inequalities as required checks");
  analyze_cmd->add_flag("--json", as_json, "Print the JSON report instead of text");
  analyze_cmd->add_option("--out", out_path, "Also write the JSON report to a file");

  std::string show_entry;
  std::optional<long> show_dim;
  CLI::App* catalog_cmd = app.add_subcommand("catalog", "List or show built-in spaces");
  catalog_cmd->add_option("--show", show_entry, "Print one entry's data");
  catalog_cmd->add_option("--dim", show_dim, "Size for --show");

  std::string verify_name;
  bool verify_json = false;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the frozen self-checks of the catalog");
  verify_cmd->add_option("--entry", verify_name, "Restrict to one entry");
  verify_cmd->add_flag("--json", verify_json, "Machine-readable output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze_cmd->parsed()) {
      if (space_name.empty() && file.empty())
        throw Error("analyze needs --space NAME or --file PATH");
      return run_analyze(space_name, file, dim, nmax, delta, decomposition_n, trials,
                         seed, delta_floor, require_ine1, require_shimorin, as_json,
                         out_path);
    }
    if (catalog_cmd->parsed()) return run_catalog(show_entry, show_dim);
    if (verify_cmd->parsed()) return run_verify(verify_name, verify_json);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 1;
}
