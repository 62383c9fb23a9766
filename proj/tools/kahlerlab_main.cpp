#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "klab/runner.hpp"
#include "klab/scenario.hpp"
#include "klab/util.hpp"

namespace {

const std::map<std::string, std::vector<klab::TaskKind>> kVerbTasks = {
    {"curvature", {klab::TaskKind::Curvature}},
    {"hsc-sup", {klab::TaskKind::HscSup}},
    {"flow", {klab::TaskKind::Flow, klab::TaskKind::NormalizedFlow}},
    {"continuity", {klab::TaskKind::Continuity}},
    {"chern", {klab::TaskKind::Chern, klab::TaskKind::MyAudit}},
    {"mu-bounds", {klab::TaskKind::MuBounds}},
    {"expansion", {klab::TaskKind::Expansion}},
};

void write_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  out << content;
}

int run_single(const std::string& verb, const std::string& path,
               const std::optional<uint64_t>& seed, const klab::RunOptions& opts) {
  klab::Scenario sc = klab::load_scenario(path);
  if (seed) sc.seed = *seed;
  const auto& allowed = kVerbTasks.at(verb);
  if (std::find(allowed.begin(), allowed.end(), sc.task) == allowed.end())
    throw klab::ConfigError("scenario task '" + klab::task_name(sc.task) +
                            "' does not match the verb '" + verb + "'");
  klab::ScenarioResult res = klab::run_scenario(sc, opts);
  std::cout << klab::result_table(res);
  return res.pass ? 0 : 1;
}

int run_suite_verb(const std::string& dir, const klab::RunOptions& opts) {
  klab::SuiteSummary summary = klab::run_suite(dir, opts);
  std::cout << klab::suite_table(summary);
  if (!summary.warning.empty()) std::cerr << "warning: " << summary.warning << "\n";
  if (!opts.out_override.empty()) {
    write_file(opts.out_override + "/summary.json", klab::suite_json(summary));
    write_file(opts.out_override + "/summary.txt", klab::suite_table(summary));
  }
  return summary.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kahlerlab: numerical checks for Kahler metrics, flows and characteristic classes"};
  app.require_subcommand(1);

  std::string input;
  std::string out;
  double tolerance_scale = 1.0;
  std::optional<uint64_t> seed;

  auto add_common = [&](CLI::App* sub, const std::string& what) {
    sub->add_option("input", input, what)->required();
    sub->add_option("--out", out, "output prefix for reports and trajectory files");
    sub->add_option("--tolerance-scale", tolerance_scale,
                    "multiply every check tolerance by this factor");
    sub->add_option_function<uint64_t>(
        "--seed", [&](const uint64_t& v) { seed = v; },
        "override the scenario seed (ignored by 'suite')");
  };

  std::vector<std::pair<std::string, std::string>> verbs = {
      {"curvature", "evaluate curvature tensors and pointwise identities"},
      {"hsc-sup", "estimate sup of holomorphic sectional curvature, with optional bound checks"},
      {"flow", "run a Kahler-Ricci flow (plain or normalized) and its monitors"},
      {"continuity", "solve the continuity-method equation and trace estimates"},
      {"chern", "integrate Chern forms or audit class-level defects"},
      {"mu-bounds", "bracket the curvature threshold of a class from both sides"},
      {"expansion", "follow the small-parameter limit of a weighted class defect"},
  };
  for (const auto& [name, desc] : verbs) add_common(app.add_subcommand(name, desc), "scenario JSON file");
  add_common(app.add_subcommand("suite", "run every scenario JSON in a directory"),
             "directory of scenario files");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  klab::RunOptions opts;
  opts.out_override = out;
  opts.tolerance_scale = tolerance_scale;
  const std::string verb = app.get_subcommands().front()->get_name();

  try {
    if (verb == "suite") return run_suite_verb(input, opts);
    return run_single(verb, input, seed, opts);
  } catch (const klab::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const klab::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
