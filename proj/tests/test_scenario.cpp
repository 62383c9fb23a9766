#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "klab/runner.hpp"
#include "klab/scenario.hpp"
#include "klab/util.hpp"

using namespace klab;
namespace fs = std::filesystem;

namespace {

Scenario parse(const std::string& text) { return parse_scenario_text(text, "inline"); }

ScenarioResult run_text(const std::string& text, const RunOptions& opts = {}) {
  return run_scenario(parse(text), opts);
}

fs::path fresh_dir(const std::string& leaf) {
  fs::path dir = fs::temp_directory_path() / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

const char* kFlatPass = R"({
  "task": "curvature",
  "manifold": {"kind": "torus", "dim": 2},
  "metric": {"family": "flat"},
  "atlas": {"resolution": 24},
  "params": {"expect_flat": true, "hsc_const": 0.0, "einstein": 0.0, "tol": 1e-10}
})";

const char* kFlatFail = R"({
  "task": "curvature",
  "manifold": {"kind": "torus", "dim": 2},
  "metric": {"family": "flat"},
  "atlas": {"resolution": 24},
  "params": {"hsc_const": 5.0, "tol": 1e-8}
})";

}  // namespace

TEST_CASE("scenario defaults and field round trip") {
  Scenario sc = parse(R"({"task":"curvature","manifold":{"kind":"torus","dim":2}})");
  CHECK(sc.name == "inline");
  CHECK(sc.task == TaskKind::Curvature);
  CHECK(sc.manifold.dim == 2);
  CHECK(!sc.has_metric);
  CHECK(sc.atlas_resolution == 0);
  CHECK(sc.seed == 1);
  CHECK(sc.probes == 32);
  CHECK(!sc.expect_flat);
  CHECK(!sc.hsc_const);
  CHECK(sc.curvature_tol == 1e-8);
  CHECK(sc.out.empty());

  Scenario hs = parse(R"({
    "name": "sup-run", "task": "hsc-sup", "seed": 7, "out": "runs/sup",
    "manifold": {"kind": "projective", "dim": 2},
    "metric": {"family": "fubini-study", "scale": 2.0},
    "atlas": {"resolution": 16},
    "params": {"restarts": 4, "expected": 2.0, "tol": 1e-3, "royden_A": 2.1,
               "berger": {"u_res": 16, "phase_res": 8}}
  })");
  CHECK(hs.name == "sup-run");
  CHECK(hs.seed == 7);
  CHECK(hs.out == "runs/sup");
  CHECK(hs.has_metric);
  CHECK(hs.metric.family == "fubini-study");
  CHECK(hs.metric.scale == 2.0);
  CHECK(hs.atlas_resolution == 16);
  CHECK(hs.hsc_restarts == 4);
  CHECK(hs.expected_sup == 2.0);
  CHECK(hs.expected_tol == 1e-3);
  CHECK(hs.royden_A == 2.1);
  REQUIRE(hs.berger_res.has_value());
  CHECK(hs.berger_res->first == 16);
  CHECK(hs.berger_res->second == 8);

  Scenario fl = parse(R"({
    "task": "flow", "manifold": {"kind": "projective", "dim": 1},
    "metric": {"family": "fubini-study"},
    "params": {"horizon": 0.25, "snapshots": 12, "rtol": 1e-6, "atol": 1e-10,
               "cfl": 0.4, "dt_max": 0.001, "dt_init": 1e-5, "eig_floor_rel": 1e-7,
               "max_steps": 5000, "ansatz": {"kind": "radial", "nodes": 64},
               "A": 3.5, "nu": 1, "dt_refine": true}
  })");
  CHECK(fl.flow.horizon == 0.25);
  CHECK(fl.flow.snapshots == 12);
  CHECK(fl.flow.rtol == 1e-6);
  CHECK(fl.flow.atol == 1e-10);
  CHECK(fl.flow.cfl == 0.4);
  CHECK(fl.flow.dt_max == 0.001);
  CHECK(fl.flow.dt_init == 1e-5);
  CHECK(fl.flow.eig_floor_rel == 1e-7);
  CHECK(fl.flow.max_steps == 5000);
  CHECK(fl.ansatz.kind == "radial");
  CHECK(fl.ansatz.nodes == 64);
  CHECK(fl.flow_A == 3.5);
  CHECK(fl.flow_nu == 1);
  CHECK(fl.dt_refine);

  Scenario ct = parse(R"({
    "task": "continuity", "manifold": {"kind": "torus", "dim": 1},
    "metric": {"family": "flat"},
    "params": {"t_values": [0.5, 1.0], "ansatz": {"kind": "torus-line", "nodes": 96},
               "mu": 0.0, "eps": 0.05, "certificate": true}
  })");
  CHECK(ct.t_values == std::vector<double>{0.5, 1.0});
  CHECK(ct.ansatz.nodes == 96);
  CHECK(ct.mu == 0.0);
  CHECK(ct.eps == 0.05);
  CHECK(ct.family_certificate);

  Scenario ex = parse(R"({
    "task": "expansion", "manifold": {"kind": "torus", "dim": 3},
    "params": {"alpha": [1, 1, 1], "nu": 1, "schedule": [1.0, 0.5]}
  })");
  CHECK(ex.alpha_coeffs == std::vector<double>{1.0, 1.0, 1.0});
  CHECK(ex.nu == 1);
  CHECK(ex.schedule == std::vector<double>{1.0, 0.5});

  Scenario pr = parse(R"({
    "task": "chern",
    "manifold": {"kind": "product", "factors": [
      {"kind": "projective", "dim": 1}, {"kind": "torus", "dim": 1, "periods": [[1.0, 2.0]]}]},
    "metric": {"family": "product", "factors": [
      {"family": "fubini-study"}, {"family": "flat", "coeffs": [1.5]}]}
  })");
  CHECK(pr.manifold.factors.size() == 2);
  CHECK(pr.manifold.factors[1].periods[0][1] == 2.0);
  CHECK(pr.metric.factors.size() == 2);
  CHECK(pr.metric.factors[1].coeffs == std::vector<double>{1.5});

  Scenario fm = parse(R"({
    "task": "curvature", "manifold": {"kind": "torus", "dim": 2},
    "metric": {"family": "fourier", "coeffs": [1.0, 1.2],
               "modes": [{"amplitude": 0.01, "wave": [1, 0, 0, 1], "phase": 0.5}]}
  })");
  CHECK(fm.metric.modes.size() == 1);
  CHECK(fm.metric.modes[0].amplitude == 0.01);
  CHECK(fm.metric.modes[0].wave == std::vector<int>{1, 0, 0, 1});
  CHECK(fm.metric.modes[0].phase == 0.5);

  Scenario mb = parse(R"({
    "task": "mu-bounds", "manifold": {"kind": "projective", "dim": 1},
    "params": {"family": "radial", "parameters": 2, "max_evals": 50, "restarts": 3,
               "simplex_scale": 0.2, "atlas_resolution": 32, "tolerance": 5e-3,
               "alpha": [6.2831853]}
  })");
  CHECK(mb.mu_search.family == MetricFamily::ProjectiveRadial);
  CHECK(mb.mu_search.parameters == 2);
  CHECK(mb.mu_search.max_evals == 50);
  CHECK(mb.mu_search.restarts == 3);
  CHECK(mb.mu_search.simplex_scale == 0.2);
  CHECK(mb.mu_search.atlas_resolution == 32);
  CHECK(mb.mu_tolerance == 5e-3);
  REQUIRE(mb.alpha_coeffs.has_value());
  CHECK(mb.alpha_coeffs->size() == 1);

  Scenario su = parse(R"({"task":"suite","params":{"dir":"some/dir"}})");
  CHECK(su.task == TaskKind::Suite);
  CHECK(su.suite_dir == "some/dir");
}

TEST_CASE("scenario schema errors name the offending field") {
  auto parse_err = [](const std::string& text, const std::string& needle) {
    try {
      parse(text);
      FAIL_CHECK("expected ConfigError for: " << needle);
    } catch (const ConfigError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":2},"extra":1})",
            "scenario.extra");
  parse_err(R"({"manifold":{"kind":"torus","dim":2}})", "scenario.task");
  parse_err(R"({"task":"ricci","manifold":{"kind":"torus","dim":2}})", "unknown task 'ricci'");
  parse_err(R"({"task":"curvature"})", "scenario.manifold");
  parse_err(R"({"task":"curvature","manifold":{"kind":"blob"}})", "manifold.kind");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus"}})", "manifold.dim");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":1,"periods":[[1.0]]}})",
            "manifold.periods[0]");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":2},
               "params":{"restarts":4}})",
            "params.restarts");
  parse_err(R"({"task":"expansion","manifold":{"kind":"torus","dim":3}})", "params");
  parse_err(R"({"task":"expansion","manifold":{"kind":"torus","dim":3},
               "params":{"nu":0,"schedule":[1.0,0.5]}})",
            "params.alpha");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":2},"seed":-1})", "seed");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":2},"seed":1.5})", "seed");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":2},"metric":{}})",
            "metric.family");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":2},
               "metric":{"family":"fourier","modes":[{"amplitude":0.1}]}})",
            "metric.modes[0].wave");
  parse_err(R"({"task":"curvature","manifold":{"kind":"projective","dim":1},
               "metric":{"family":"radial","bumps":[{"amplitude":0.1,"center":0,"sigma":1}]}})",
            "metric.bumps[0].sigma");
  parse_err(R"({"task":"curvature","manifold":{"kind":"torus","dim":2},
               "atlas":{"res":16}})",
            "atlas.res");
  parse_err(R"({"task":"suite"})", "params");
  parse_err(R"({not json)", "scenario 'inline'");

  CHECK_THROWS_AS(load_scenario("/nonexistent/dir/missing.json"), ConfigError);
}

TEST_CASE("metric and ansatz builders reject mismatched requests") {
  ManifoldSpec t2 = make_torus(2);
  ScenarioMetric prod;
  prod.family = "product";
  CHECK_THROWS_AS(build_scenario_metric(t2, prod, 1), ConfigError);

  ManifoldSpec pp = make_product({make_projective(1), make_torus(1)});
  ScenarioMetric one_factor = prod;
  one_factor.factors.push_back(ScenarioMetric{.family = "fubini-study"});
  CHECK_THROWS_AS(build_scenario_metric(pp, one_factor, 1), ConfigError);

  ScenarioMetric bogus;
  bogus.family = "bogus";
  CHECK_THROWS_AS(build_scenario_metric(t2, bogus, 1), ConfigError);

  CHECK_NOTHROW(build_scenario_ansatz(make_torus(1), AnsatzParams{}));
  CHECK_NOTHROW(build_scenario_ansatz(make_projective(1), AnsatzParams{}));
  CHECK_THROWS_AS(build_scenario_ansatz(make_projective(2), AnsatzParams{}), ConfigError);
  CHECK_THROWS_AS(build_scenario_ansatz(make_torus(1), AnsatzParams{.kind = "weird"}),
                  ConfigError);
}

TEST_CASE("curvature task reports expectations") {
  ScenarioResult flat = run_text(kFlatPass);
  CHECK(flat.pass);
  CHECK(flat.error.empty());
  REQUIRE(flat.reports.size() == 4);
  CHECK(flat.reports[0].name == "curvature-consistency");
  CHECK(flat.reports[1].name == "curvature-flat");
  CHECK(flat.reports[2].name == "hsc-constancy");
  CHECK(flat.reports[3].name == "einstein-constant");
  CHECK(flat.reports[1].values.at("max_component") < 1e-12);

  ScenarioResult fs = run_text(R"({
    "task": "curvature",
    "manifold": {"kind": "projective", "dim": 1},
    "metric": {"family": "fubini-study"},
    "atlas": {"resolution": 48},
    "params": {"hsc_const": 2.0, "einstein": 2.0, "tol": 1e-6}
  })");
  CHECK(fs.pass);
  REQUIRE(fs.reports.size() == 3);
  CHECK(fs.reports[1].values.at("max_deviation") < 1e-6);

  ScenarioResult bad = run_text(kFlatFail);
  CHECK(!bad.pass);
  CHECK(bad.error.empty());
  REQUIRE(bad.reports.size() == 2);
  CHECK(bad.reports[0].pass);
  CHECK(!bad.reports[1].pass);
}

TEST_CASE("hsc-sup task attaches bound checks") {
  ScenarioResult res = run_text(R"({
    "task": "hsc-sup",
    "manifold": {"kind": "projective", "dim": 2},
    "metric": {"family": "fubini-study"},
    "atlas": {"resolution": 12},
    "params": {"restarts": 6, "expected": 2.0, "tol": 1e-3, "royden_A": 2.000001,
               "berger": {"u_res": 64, "phase_res": 64}}
  })");
  CHECK(res.pass);
  REQUIRE(res.reports.size() == 3);
  CHECK(res.reports[0].name == "hsc-sup");
  CHECK(res.reports[0].values.at("sup_H") == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(res.reports[1].name == "royden-quadratic-bound");
  CHECK(res.reports[2].name == "direction-average-identity");
}

TEST_CASE("flow task writes its trajectory and reports") {
  fs::path dir = fresh_dir("klab_scn_flow");
  const std::string out = (dir / "sphere").string();
  ScenarioResult res = run_scenario(parse(R"({
    "task": "flow",
    "manifold": {"kind": "projective", "dim": 1},
    "metric": {"family": "fubini-study"},
    "params": {"horizon": 0.6, "snapshots": 120, "ansatz": {"kind": "radial", "nodes": 192}}
  })"),
                                    RunOptions{.out_override = out});
  CHECK(res.pass);
  REQUIRE(res.reports.size() >= 5);
  CHECK(res.reports[0].name == "flow-summary");
  CHECK(res.reports[0].values.at("T_num") == doctest::Approx(0.5).epsilon(0.015));
  CHECK(res.reports[0].values.at("singular") == 1.0);
  std::vector<std::string> names;
  for (const auto& r : res.reports) names.push_back(r.name);
  for (const char* want : {"existence-bound", "trace-bound", "blowup-rate", "trace-evolution",
                           "flow-class-volume"})
    CHECK(std::find(names.begin(), names.end(), want) != names.end());

  REQUIRE(res.artifacts.size() == 2);
  CHECK(fs::exists(out + "_trajectory.csv"));
  CHECK(fs::exists(out + "_report.json"));
  nlohmann::json j = nlohmann::json::parse(std::ifstream(out + "_report.json"));
  CHECK(j.at("pass").get<bool>());
  CHECK(j.at("task") == "flow");
  CHECK(j.at("reports").size() == res.reports.size());
  CHECK(j.at("reports")[0].at("name") == "flow-summary");

  // the refinement pass needs an explicit base step to halve
  CHECK_THROWS_AS(run_text(R"({
    "task": "flow",
    "manifold": {"kind": "torus", "dim": 1},
    "metric": {"family": "flat"},
    "params": {"horizon": 0.05, "dt_refine": true}
  })"),
                  ConfigError);
}

TEST_CASE("normalized flow task monitors the functionals") {
  ScenarioResult res = run_text(R"({
    "task": "normalized-flow",
    "manifold": {"kind": "torus", "dim": 1},
    "metric": {"family": "fourier", "coeffs": [1.0],
               "modes": [{"amplitude": 0.008, "wave": [1, 0]}]},
    "params": {"horizon": 1.0, "snapshots": 80, "ansatz": {"nodes": 128}}
  })");
  CHECK(res.pass);
  REQUIRE(res.reports.size() == 3);
  CHECK(res.reports[0].name == "flow-summary");
  CHECK(res.reports[1].name == "flow-functionals");
  CHECK(res.reports[2].name == "flow-class-volume");
  CHECK(res.reports[1].values.at("identity_max_rel_error") < 1e-2);
  CHECK(res.reports[1].values.at("L_max_abs") < 1e-10);
}

TEST_CASE("continuity task solves, estimates and certifies") {
  fs::path dir = fresh_dir("klab_scn_cont");
  const std::string out = (dir / "fs").string();
  ScenarioResult res = run_scenario(parse(R"({
    "task": "continuity",
    "manifold": {"kind": "projective", "dim": 1},
    "metric": {"family": "fubini-study"},
    "params": {"t_values": [2.5, 3.0], "ansatz": {"kind": "radial", "nodes": 128},
               "mu": 2.0, "eps": 0.1}
  })"),
                                    RunOptions{.out_override = out});
  CHECK(res.pass);
  REQUIRE(res.reports.size() == 3);
  CHECK(res.reports[0].name == "continuity-solve");
  CHECK(res.reports[0].values.at("t") == 2.5);
  CHECK(res.reports[1].values.at("t") == 3.0);
  CHECK(res.reports[2].name == "continuity-trace-estimate");
  CHECK(fs::exists(out + "_newton.csv"));

  ScenarioResult cert = run_text(R"({
    "task": "continuity",
    "manifold": {"kind": "torus", "dim": 1},
    "metric": {"family": "flat"},
    "params": {"ansatz": {"nodes": 96}, "mu": 0.0, "eps": 0.05, "certificate": true}
  })");
  CHECK(cert.pass);
  REQUIRE(cert.reports.size() == 1);
  CHECK(cert.reports[0].name == "my-family-certificate");

  CHECK_THROWS_AS(run_text(R"({
    "task": "continuity",
    "manifold": {"kind": "torus", "dim": 1},
    "metric": {"family": "flat"},
    "params": {"certificate": true}
  })"),
                  ConfigError);
}

TEST_CASE("chern and audit tasks") {
  ScenarioResult chern = run_text(R"({
    "task": "chern",
    "manifold": {"kind": "projective", "dim": 2},
    "metric": {"family": "fubini-study"},
    "atlas": {"resolution": 20}
  })");
  CHECK(chern.pass);
  REQUIRE(chern.reports.size() == 3);
  CHECK(chern.reports[0].name == "chern-c1-number");
  CHECK(chern.reports[0].values.at("class_value") == doctest::Approx(9.0).epsilon(1e-12));
  CHECK(chern.reports[1].name == "chern-c2-number");
  CHECK(chern.reports[1].values.at("class_value") == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(chern.reports[2].name == "chern-volume");

  ScenarioResult audit = run_text(R"({
    "task": "my-audit",
    "manifold": {"kind": "torus", "dim": 2},
    "metric": {"family": "flat"},
    "atlas": {"resolution": 12}
  })");
  CHECK(audit.pass);
  REQUIRE(audit.reports.size() == 2);
  CHECK(audit.reports[0].name == "my-defect");
  CHECK(audit.reports[0].values.at("canonical_nef") == 1.0);
  CHECK(audit.reports[1].name == "cw-inequality");

  ScenarioResult fano = run_text(R"({
    "task": "my-audit",
    "manifold": {"kind": "projective", "dim": 2}
  })");
  CHECK(fano.pass);
  REQUIRE(fano.reports.size() == 1);
  CHECK(fano.reports[0].values.at("canonical_nef") == 0.0);
  CHECK(!fano.reports[0].notes.empty());
}

TEST_CASE("mu-bounds task brackets a flat class") {
  ScenarioResult res = run_text(R"({
    "task": "mu-bounds",
    "manifold": {"kind": "torus", "dim": 1},
    "params": {"family": "fourier", "parameters": 2, "max_evals": 40, "restarts": 1,
               "atlas_resolution": 24, "tolerance": 1e-3, "alpha": [1.0]}
  })");
  CHECK(res.pass);
  REQUIRE(res.reports.size() == 1);
  CHECK(res.reports[0].name == "mu-sandwich");

  CHECK_THROWS_AS(run_text(R"({
    "task": "mu-bounds",
    "manifold": {"kind": "torus", "dim": 1},
    "params": {"family": "fourier"}
  })"),
                  ConfigError);
}

TEST_CASE("expansion task forwards to the class check") {
  ScenarioResult res = run_text(R"({
    "task": "expansion",
    "manifold": {"kind": "torus", "dim": 3},
    "params": {"alpha": [1, 1, 1], "nu": 0, "schedule": [1.0, 0.5, 0.25, 0.125]}
  })");
  CHECK(res.pass);
  REQUIRE(res.reports.size() == 1);
  CHECK(res.reports[0].name == "asymptotic-expansion");

  CHECK_THROWS_AS(run_text(R"({
    "task": "expansion",
    "manifold": {"kind": "torus", "dim": 3},
    "params": {"alpha": [1, 1, 1], "nu": 5, "schedule": [1.0, 0.5]}
  })"),
                  ValidationError);
}

TEST_CASE("numerical failures are reported, config failures thrown") {
  // an over-amplified perturbation breaks metric positivity at build time
  ScenarioResult res = run_text(R"({
    "task": "curvature",
    "manifold": {"kind": "torus", "dim": 1},
    "metric": {"family": "fourier", "coeffs": [1.0],
               "modes": [{"amplitude": 80.0, "wave": [1, 0]}]}
  })");
  CHECK(!res.pass);
  CHECK(!res.error.empty());
  CHECK(res.reports.empty());

  CHECK_THROWS_AS(run_text(R"({
    "task": "curvature",
    "manifold": {"kind": "torus", "dim": 2}
  })"),
                  ConfigError);
  CHECK_THROWS_AS(run_text(kFlatPass, RunOptions{.tolerance_scale = 0.0}), ConfigError);
  CHECK_THROWS_AS(run_text(kFlatPass, RunOptions{.tolerance_scale = -2.0}), ConfigError);
}

TEST_CASE("identical scenarios reproduce identical reports") {
  const char* text = R"({
    "task": "hsc-sup", "seed": 11,
    "manifold": {"kind": "torus", "dim": 2},
    "metric": {"family": "random-fourier", "max_mode": 2, "amplitude": 0.02},
    "atlas": {"resolution": 16},
    "params": {"restarts": 4}
  })";
  ScenarioResult a = run_text(text);
  ScenarioResult b = run_text(text);
  CHECK(a.pass);
  CHECK(result_json(a) == result_json(b));
  CHECK(result_json(a).find("\"seed\": 11") != std::string::npos);
}

TEST_CASE("suite runs a directory and survives bad members") {
  fs::path dir = fresh_dir("klab_scn_suite");
  write_file(dir / "a_pass.json", kFlatPass);
  write_file(dir / "b_fail.json", kFlatFail);
  write_file(dir / "c_broken.json", "{ not json");
  write_file(dir / "notes.txt", "ignored");

  SuiteSummary summary = run_suite(dir.string());
  CHECK(!summary.pass);
  REQUIRE(summary.results.size() == 3);
  CHECK(summary.results[0].name == "a_pass");
  CHECK(summary.results[0].pass);
  CHECK(summary.results[1].name == "b_fail");
  CHECK(!summary.results[1].pass);
  CHECK(summary.results[1].error.empty());
  CHECK(summary.results[2].name == "c_broken");
  CHECK(!summary.results[2].pass);
  CHECK(!summary.results[2].error.empty());

  std::string table = suite_table(summary);
  CHECK(table.find("SUITE FAIL") != std::string::npos);
  nlohmann::json js = nlohmann::json::parse(suite_json(summary));
  CHECK(!js.at("pass").get<bool>());
  CHECK(js.at("scenarios").size() == 3);

  // per-scenario artifacts under a prefix directory
  fs::path outdir = fresh_dir("klab_scn_suite_out");
  run_suite(dir.string(), RunOptions{.out_override = outdir.string()});
  CHECK(fs::exists(outdir / "a_pass_report.json"));
  CHECK(fs::exists(outdir / "b_fail_report.json"));

  // the suite task wraps the same runner
  Scenario sc;
  sc.task = TaskKind::Suite;
  sc.name = "wrapped";
  sc.suite_dir = dir.string();
  ScenarioResult wrapped = run_scenario(sc);
  CHECK(!wrapped.pass);
  REQUIRE(wrapped.reports.size() == 3);
  CHECK(wrapped.reports[0].anchor == "suite scenario");

  fs::path empty = fresh_dir("klab_scn_empty");
  SuiteSummary none = run_suite(empty.string());
  CHECK(none.pass);
  CHECK(none.results.empty());
  CHECK(!none.warning.empty());

  CHECK_THROWS_AS(run_suite((dir / "missing_sub").string()), ConfigError);
}

TEST_CASE("result tables render a verdict") {
  ScenarioResult res = run_text(kFlatPass);
  std::string table = result_table(res);
  CHECK(table.find("inline") != std::string::npos);
  CHECK(table.find("PASS") != std::string::npos);

  ScenarioResult bad = run_text(kFlatFail);
  CHECK(result_table(bad).find("FAIL") != std::string::npos);

  nlohmann::json j = nlohmann::json::parse(result_json(res));
  for (const char* key : {"name", "task", "model", "seed", "pass", "error", "artifacts", "reports"})
    CHECK(j.contains(key));
  for (const char* key : {"name", "anchor", "pass", "tolerance", "values", "bounds", "notes"})
    CHECK(j.at("reports")[0].contains(key));
}
