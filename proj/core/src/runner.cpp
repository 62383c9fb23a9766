#include "klab/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "klab/ansatz.hpp"
#include "klab/atlas.hpp"
#include "klab/chern_weil.hpp"
#include "klab/continuity.hpp"
#include "klab/curvature.hpp"
#include "klab/flow.hpp"
#include "klab/flow_checks.hpp"
#include "klab/hsc.hpp"
#include "klab/inequalities.hpp"
#include "klab/mu_bounds.hpp"

namespace klab {

namespace {

using nlohmann::ordered_json;

void write_text_file(const std::string& path, const std::string& content) {
  std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p);
  if (!out) throw ConfigError("output path '" + path + "' is not writable");
  out << content;
}

MetricPtr require_metric(const Scenario& sc) {
  if (!sc.has_metric)
    throw ConfigError("scenario field 'metric': required for task " + task_name(sc.task));
  return build_scenario_metric(sc.manifold, sc.metric, sc.seed);
}

Eigen::VectorXcd random_direction(Rng& rng, int n) {
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = uniform(rng, 0.2, 1.0) * unit_phase(rng);
  return v;
}

void run_curvature(const Scenario& sc, const RunOptions& opts, ScenarioResult& res) {
  MetricPtr metric = require_metric(sc);
  QuadratureAtlas atlas = make_default_atlas(sc.manifold, sc.atlas_resolution);
  Rng rng(sc.seed);
  const size_t stride = std::max<size_t>(1, atlas.size() / static_cast<size_t>(std::max(1, sc.probes)));

  double sym = 0.0, contr = 0.0, max_comp = 0.0, max_abs_h = 0.0, max_abs_s = 0.0;
  double einstein_dev = 0.0, hsc_dev = 0.0, min_eig = std::numeric_limits<double>::max();
  int sampled = 0;
  for (size_t i = 0; i < atlas.size(); i += stride) {
    CurvatureData curv = curvature_at(*metric, atlas.points[i].z);
    ++sampled;
    sym = std::max(sym, curv.symmetry_defect());
    contr = std::max(contr, curv.contraction_defect());
    for (const auto& blk : curv.R) max_comp = std::max(max_comp, blk.cwiseAbs().maxCoeff());
    max_abs_s = std::max(max_abs_s, std::abs(curv.scalar));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(curv.g);
    min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
    for (int d = 0; d < 4; ++d) {
      double h = curv.hsc(random_direction(rng, curv.n));
      max_abs_h = std::max(max_abs_h, std::abs(h));
      if (sc.hsc_const) hsc_dev = std::max(hsc_dev, std::abs(h - *sc.hsc_const));
    }
    if (sc.einstein)
      einstein_dev = std::max(einstein_dev,
                              (curv.ricci - *sc.einstein * curv.g).cwiseAbs().maxCoeff());
  }

  CheckReport consistency("curvature-consistency",
                          "curvature tensor symmetries and trace against the Ricci form");
  consistency.values["symmetry_defect"] = sym;
  consistency.values["contraction_defect"] = contr;
  consistency.values["min_metric_eigenvalue"] = min_eig;
  consistency.values["points"] = sampled;
  consistency.tolerance = 1e-8 * opts.tolerance_scale;
  consistency.bounds["defect_max"] = consistency.tolerance;
  consistency.pass = sym <= consistency.tolerance && contr <= consistency.tolerance && min_eig > 0.0;
  res.reports.push_back(std::move(consistency));

  const double tol = sc.curvature_tol * opts.tolerance_scale;
  if (sc.expect_flat) {
    CheckReport flat("curvature-flat", "all curvature components, H and S vanish");
    flat.values["max_component"] = max_comp;
    flat.values["max_abs_H"] = max_abs_h;
    flat.values["max_abs_S"] = max_abs_s;
    flat.tolerance = tol;
    flat.bounds["component_max"] = tol;
    flat.pass = max_comp <= tol && max_abs_h <= tol && max_abs_s <= tol;
    res.reports.push_back(std::move(flat));
  }
  if (sc.hsc_const) {
    CheckReport hc("hsc-constancy", "H(xi) is constant over points and directions");
    hc.values["expected"] = *sc.hsc_const;
    hc.values["max_deviation"] = hsc_dev;
    hc.tolerance = tol;
    hc.bounds["deviation_max"] = tol;
    hc.pass = hsc_dev <= tol;
    res.reports.push_back(std::move(hc));
  }
  if (sc.einstein) {
    CheckReport ec("einstein-constant", "Ric = c g with the stated constant");
    ec.values["constant"] = *sc.einstein;
    ec.values["max_deviation"] = einstein_dev;
    ec.tolerance = tol;
    ec.bounds["deviation_max"] = tol;
    ec.pass = einstein_dev <= tol;
    res.reports.push_back(std::move(ec));
  }
}

void run_hsc_sup(const Scenario& sc, const RunOptions& opts, ScenarioResult& res) {
  MetricPtr metric = require_metric(sc);
  QuadratureAtlas atlas = make_default_atlas(sc.manifold, sc.atlas_resolution);
  HscSearchConfig cfg;
  cfg.restarts = sc.hsc_restarts;
  cfg.seed = sc.seed;
  HscEstimate est = sup_hsc(*metric, atlas, cfg);

  CheckReport rep("hsc-sup", "sup over the atlas of the pointwise maximal H");
  rep.values["sup_H"] = est.value;
  rep.values["points"] = est.points_sampled;
  rep.pass = true;
  if (sc.expected_sup) {
    rep.values["expected"] = *sc.expected_sup;
    rep.tolerance = sc.expected_tol * opts.tolerance_scale;
    rep.bounds["deviation_max"] = rep.tolerance;
    rep.pass = std::abs(est.value - *sc.expected_sup) <= rep.tolerance;
  }
  res.reports.push_back(std::move(rep));

  if (sc.royden_A)
    res.reports.push_back(royden_bound_check(*metric, *metric, *sc.royden_A, atlas, cfg));
  if (sc.berger_res) {
    const Point& z = atlas.points[atlas.size() / 3].z;
    res.reports.push_back(
        berger_identity_check(*metric, z, sc.berger_res->first, sc.berger_res->second));
  }
}

CheckReport class_volume_check(const FlowTrajectory& traj, double tol) {
  CheckReport rep("flow-class-volume", "int omega(t)^n equals the volume of [omega(t)]");
  double worst = 0.0;
  for (const auto& s : traj.snapshots) {
    double rel = std::abs(s.volume - s.class_volume) / std::max(1.0, std::abs(s.class_volume));
    worst = std::max(worst, rel);
  }
  rep.values["max_rel_error"] = worst;
  rep.values["snapshots"] = static_cast<double>(traj.snapshots.size());
  rep.tolerance = tol;
  rep.bounds["rel_error_max"] = tol;
  rep.pass = worst <= tol;
  return rep;
}

void run_flow(const Scenario& sc, const RunOptions& opts, ScenarioResult& res,
              const std::string& out) {
  MetricPtr metric = require_metric(sc);
  Ansatz ansatz = build_scenario_ansatz(sc.manifold, sc.ansatz);
  const bool normalized = sc.task == TaskKind::NormalizedFlow;
  FlowTrajectory traj = normalized ? run_normalized_krf(*metric, ansatz, sc.flow)
                                   : run_krf(*metric, ansatz, sc.flow);
  if (!out.empty()) {
    write_text_file(out + "_trajectory.csv", trajectory_csv(traj));
    res.artifacts.push_back(out + "_trajectory.csv");
  }

  const double A = sc.flow_A.value_or(traj.initial_sup_h);
  CheckReport summary("flow-summary", "trajectory endpoint and singularity indicators");
  summary.values["T_num"] = traj.end_time;
  summary.values["singular"] = traj.singular ? 1.0 : 0.0;
  summary.values["floor_triggered"] = traj.floor_triggered ? 1.0 : 0.0;
  summary.values["dt_underflow"] = traj.dt_underflow ? 1.0 : 0.0;
  summary.values["initial_sup_H"] = traj.initial_sup_h;
  summary.values["A_used"] = A;
  summary.values["accepted_steps"] = static_cast<double>(traj.accepted_steps);
  summary.values["rejected_steps"] = static_cast<double>(traj.rejected_steps);
  summary.pass = true;
  summary.note(traj.stop_reason);
  res.reports.push_back(std::move(summary));

  if (normalized) {
    std::optional<int> nu = sc.flow_nu;
    if (!nu && in_nef_cone(sc.manifold, sc.manifold.canonical_class()))
      nu = numerical_kodaira_dimension(sc.manifold);
    res.reports.push_back(
        flow_functional_monitor(traj, nu, 1e-2 * opts.tolerance_scale));
  } else {
    res.reports.push_back(existence_bound_check(traj, A));
    res.reports.push_back(trace_bound_monitor(traj, A, 1e-3 * opts.tolerance_scale));
    if (traj.singular) res.reports.push_back(blowup_rate_check(traj, 0.02 * opts.tolerance_scale));
    res.reports.push_back(trace_evolution_monitor(traj, A, 0.05 * opts.tolerance_scale));
  }
  res.reports.push_back(class_volume_check(traj, 1e-4 * opts.tolerance_scale));

  if (sc.dt_refine) {
    if (!(sc.flow.dt_max > 0.0))
      throw ConfigError("scenario field 'params.dt_refine': requires dt_max > 0");
    FlowConfig refined = sc.flow;
    refined.dt_max = sc.flow.dt_max / 2.0;
    FlowTrajectory traj2 = normalized ? run_normalized_krf(*metric, ansatz, refined)
                                      : run_krf(*metric, ansatz, refined);
    CheckReport rep("flow-dt-refinement", "halving the maximal step leaves T_num unchanged");
    double rel = std::abs(traj2.end_time - traj.end_time) / std::max(1e-300, traj.end_time);
    rep.values["T_base"] = traj.end_time;
    rep.values["T_refined"] = traj2.end_time;
    rep.values["rel_change"] = rel;
    rep.tolerance = 5e-3 * opts.tolerance_scale;
    rep.bounds["rel_change_max"] = rep.tolerance;
    rep.pass = rel <= rep.tolerance;
    res.reports.push_back(std::move(rep));
  }
}

void run_continuity(const Scenario& sc, const RunOptions& opts, ScenarioResult& res,
                    const std::string& out) {
  MetricPtr metric = require_metric(sc);
  Ansatz ansatz = build_scenario_ansatz(sc.manifold, sc.ansatz);
  ContinuityConfig cfg;
  std::ostringstream csv;
  csv << "t,iter,residual\n";

  for (double t : sc.t_values) {
    ContinuitySolution sol = wu_yau_solve(*metric, ansatz, t, cfg);
    CheckReport rep("continuity-solve", "damped Newton solution of the twisted equation");
    rep.values["t"] = t;
    rep.values["newton_iters"] = sol.newton_iters;
    rep.values["newton_residual"] = sol.newton_residual;
    rep.values["equation_residual"] = sol.equation_residual;
    rep.values["trace_max"] = sol.trace_max;
    rep.tolerance = 1e-4 * opts.tolerance_scale;
    rep.bounds["equation_residual_max"] = rep.tolerance;
    rep.pass = sol.converged && sol.equation_residual <= rep.tolerance;
    if (!sol.note.empty()) rep.note(sol.note);
    res.reports.push_back(std::move(rep));
    for (size_t k = 0; k < sol.residual_history.size(); ++k)
      csv << t << "," << k << "," << sol.residual_history[k] << "\n";
  }

  if (sc.mu && sc.eps) {
    QuadratureAtlas atlas = make_default_atlas(sc.manifold, sc.atlas_resolution);
    HscSearchConfig hsc_cfg;
    hsc_cfg.seed = sc.seed;
    double measured = sup_hsc(*metric, atlas, hsc_cfg).value;
    if (sc.family_certificate) {
      FamilyCertificate cert = my_family_construct(*metric, ansatz, *sc.mu, *sc.eps, measured, cfg);
      res.reports.push_back(cert.report);
    } else {
      const int n = sc.manifold.dim;
      const double t = n * *sc.mu + 2.0 * n * *sc.eps;
      ContinuitySolution sol = wu_yau_solve(*metric, ansatz, t, cfg);
      res.reports.push_back(trace_estimate_check(sol, *sc.mu, *sc.eps, measured));
    }
  } else if (sc.family_certificate) {
    throw ConfigError("scenario field 'params.certificate': requires both mu and eps");
  }

  if (!out.empty() && !sc.t_values.empty()) {
    write_text_file(out + "_newton.csv", csv.str());
    res.artifacts.push_back(out + "_newton.csv");
  }
}

double euler_characteristic(const ManifoldSpec& spec) {
  switch (spec.kind) {
    case ModelKind::Torus: return 0.0;
    case ModelKind::Projective: return spec.dim + 1.0;
    case ModelKind::CurveData: return 2.0 - 2.0 * spec.genus;
    case ModelKind::Product: {
      double chi = 1.0;
      for (const auto& f : spec.factors) chi *= euler_characteristic(f);
      return chi;
    }
  }
  return 0.0;
}

void run_chern(const Scenario& sc, const RunOptions& opts, ScenarioResult& res) {
  const int n = sc.manifold.dim;
  MetricPtr metric = require_metric(sc);
  QuadratureAtlas atlas = make_default_atlas(sc.manifold, sc.atlas_resolution);
  ChernData data = chern_forms(sc.manifold, metric, atlas);

  std::vector<KahlerClassVector> c1_args(static_cast<size_t>(n), data.c1_class);
  const double c1_class_value = class_pairing(sc.manifold, c1_args);
  CheckReport c1rep("chern-c1-number", "quadrature of c1^n equals the class pairing c1^n");
  c1rep.values["quadrature"] = data.c1_top;
  c1rep.values["class_value"] = c1_class_value;
  c1rep.tolerance = 1e-3 * opts.tolerance_scale;
  c1rep.bounds["rel_error_max"] = c1rep.tolerance;
  const double c1_err =
      std::abs(data.c1_top - c1_class_value) / std::max(1.0, std::abs(c1_class_value));
  c1rep.values["rel_error"] = c1_err;
  c1rep.pass = c1_err <= c1rep.tolerance;
  res.reports.push_back(std::move(c1rep));

  if (n >= 2) {
    double c2_class_value = 0.0;
    bool have_class = true;
    if (n == 2) {
      c2_class_value = class_pair_quadratic(sc.manifold, data.c2_class, {});
    } else if (auto cls = metric->cohomology_class()) {
      std::vector<KahlerClassVector> rest(static_cast<size_t>(n - 2), *cls);
      c2_class_value = class_pair_quadratic(sc.manifold, data.c2_class, rest);
    } else {
      have_class = false;
    }
    if (have_class) {
      CheckReport c2rep("chern-c2-number",
                        "quadrature of c2 wedge omega^{n-2} equals the class pairing");
      c2rep.values["quadrature"] = data.c2_top;
      c2rep.values["class_value"] = c2_class_value;
      const double err =
          std::abs(data.c2_top - c2_class_value) / std::max(1.0, std::abs(c2_class_value));
      c2rep.values["rel_error"] = err;
      c2rep.tolerance = 1e-3 * opts.tolerance_scale;
      c2rep.bounds["rel_error_max"] = c2rep.tolerance;
      c2rep.pass = err <= c2rep.tolerance;
      if (n == 2) {
        const double chi = euler_characteristic(sc.manifold);
        c2rep.values["euler_characteristic"] = chi;
        c2rep.pass = c2rep.pass && std::abs(data.c2_top - chi) <= c2rep.tolerance * std::max(1.0, std::abs(chi));
      }
      res.reports.push_back(std::move(c2rep));
    }
  }

  if (auto cls = metric->cohomology_class()) {
    CheckReport vol("chern-volume", "quadrature volume equals the class volume");
    const double class_vol = class_volume(sc.manifold, *cls);
    vol.values["quadrature"] = data.volume;
    vol.values["class_value"] = class_vol;
    const double err = std::abs(data.volume - class_vol) / std::max(1.0, std::abs(class_vol));
    vol.values["rel_error"] = err;
    vol.tolerance = 1e-4 * opts.tolerance_scale;
    vol.bounds["rel_error_max"] = vol.tolerance;
    vol.pass = err <= vol.tolerance;
    res.reports.push_back(std::move(vol));
  }
}

void run_my_audit(const Scenario& sc, const RunOptions& opts, ScenarioResult& res) {
  ChernData data = chern_class_data(sc.manifold);
  CheckReport defect("my-defect", "(2(n+1)/n c2 - c1^2).(-c1)^{n-2} >= 0 when c1(K) is nef");
  const double value = my_defect_MY1(sc.manifold, data);
  defect.values["defect"] = value;
  const bool k_nef = in_nef_cone(sc.manifold, sc.manifold.canonical_class());
  defect.values["canonical_nef"] = k_nef ? 1.0 : 0.0;
  defect.tolerance = 1e-9 * opts.tolerance_scale;
  if (k_nef) {
    defect.bounds["defect_min"] = -defect.tolerance * std::max(1.0, std::abs(value));
    defect.pass = value >= defect.bounds["defect_min"];
  } else {
    defect.pass = true;
    defect.note("canonical class is not nef in the model; value reported without the assertion");
  }
  res.reports.push_back(std::move(defect));

  if (sc.has_metric) {
    MetricPtr metric = build_scenario_metric(sc.manifold, sc.metric, sc.seed);
    QuadratureAtlas atlas = make_default_atlas(sc.manifold, sc.atlas_resolution);
    CwAudit audit = cw_inequality_audit(sc.manifold, metric, atlas, 1e-6 * opts.tolerance_scale);
    res.reports.push_back(audit.report);
  }
}

void run_mu_bounds(const Scenario& sc, const RunOptions& opts, ScenarioResult& res) {
  KahlerClassVector alpha;
  if (sc.alpha_coeffs) {
    alpha = KahlerClassVector(*sc.alpha_coeffs);
  } else if (sc.has_metric) {
    MetricPtr metric = build_scenario_metric(sc.manifold, sc.metric, sc.seed);
    auto cls = metric->cohomology_class();
    if (!cls) throw ConfigError("scenario field 'params.alpha': missing and the metric has no class");
    alpha = *cls;
  } else {
    throw ConfigError("scenario field 'params.alpha': missing (no metric to take the class from)");
  }
  if (alpha.size() != sc.manifold.basis_size())
    throw ConfigError("scenario field 'params.alpha': expected " +
                      std::to_string(sc.manifold.basis_size()) + " coefficients");
  MuSearchConfig cfg = sc.mu_search;
  cfg.seed = sc.seed;
  cfg.hsc.seed = sc.seed + 1;
  if (cfg.atlas_resolution == 0) cfg.atlas_resolution = sc.atlas_resolution;
  res.reports.push_back(
      mu_sandwich_check(sc.manifold, alpha, cfg, sc.mu_tolerance * opts.tolerance_scale));
}

void run_expansion(const Scenario& sc, const RunOptions&, ScenarioResult& res) {
  if (!sc.alpha_coeffs) throw ConfigError("scenario field 'params.alpha': missing");
  KahlerClassVector alpha(*sc.alpha_coeffs);
  if (alpha.size() != sc.manifold.basis_size())
    throw ConfigError("scenario field 'params.alpha': expected " +
                      std::to_string(sc.manifold.basis_size()) + " coefficients");
  res.reports.push_back(asymptotic_expansion_check(sc.manifold, alpha, sc.nu, sc.schedule));
}

ordered_json report_to_json(const CheckReport& rep) {
  ordered_json j;
  j["name"] = rep.name;
  j["anchor"] = rep.anchor;
  j["pass"] = rep.pass;
  j["tolerance"] = rep.tolerance;
  j["values"] = ordered_json::object();
  for (const auto& [k, v] : rep.values) j["values"][k] = v;
  j["bounds"] = ordered_json::object();
  for (const auto& [k, v] : rep.bounds) j["bounds"][k] = v;
  j["notes"] = rep.notes;
  return j;
}

}  // namespace

ScenarioResult run_scenario(const Scenario& sc, const RunOptions& opts) {
  if (!(opts.tolerance_scale > 0.0))
    throw ConfigError("option 'tolerance-scale' must be positive");
  ScenarioResult res;
  res.name = sc.name;
  res.task = task_name(sc.task);
  res.seed = sc.seed;
  res.model = sc.task == TaskKind::Suite ? "suite" : sc.manifold.describe();
  const std::string out = opts.out_override.empty() ? sc.out : opts.out_override;

  try {
    switch (sc.task) {
      case TaskKind::Curvature: run_curvature(sc, opts, res); break;
      case TaskKind::HscSup: run_hsc_sup(sc, opts, res); break;
      case TaskKind::Flow:
      case TaskKind::NormalizedFlow: run_flow(sc, opts, res, out); break;
      case TaskKind::Continuity: run_continuity(sc, opts, res, out); break;
      case TaskKind::Chern: run_chern(sc, opts, res); break;
      case TaskKind::MyAudit: run_my_audit(sc, opts, res); break;
      case TaskKind::MuBounds: run_mu_bounds(sc, opts, res); break;
      case TaskKind::Expansion: run_expansion(sc, opts, res); break;
      case TaskKind::Suite: {
        RunOptions sub = opts;
        sub.out_override.clear();
        SuiteSummary summary = run_suite(sc.suite_dir, sub);
        for (const auto& r : summary.results) {
          CheckReport row(r.name, "suite scenario");
          row.values["checks"] = static_cast<double>(r.reports.size());
          row.pass = r.pass;
          if (!r.error.empty()) row.note(r.error);
          res.reports.push_back(std::move(row));
        }
        if (!summary.warning.empty()) res.error = "";
        break;
      }
    }
  } catch (const NumericalError& e) {
    res.error = e.what();
    res.pass = false;
  }

  for (const auto& rep : res.reports) res.pass = res.pass && rep.pass;

  if (!out.empty()) {
    write_text_file(out + "_report.json", result_json(res));
    res.artifacts.push_back(out + "_report.json");
  }
  return res;
}

ScenarioResult run_scenario_file(const std::string& path, const RunOptions& opts) {
  return run_scenario(load_scenario(path), opts);
}

std::string result_json(const ScenarioResult& r) {
  ordered_json j;
  j["name"] = r.name;
  j["task"] = r.task;
  j["model"] = r.model;
  j["seed"] = r.seed;
  j["pass"] = r.pass;
  j["error"] = r.error;
  j["artifacts"] = r.artifacts;
  j["reports"] = ordered_json::array();
  for (const auto& rep : r.reports) j["reports"].push_back(report_to_json(rep));
  return j.dump(2) + "\n";
}

std::string result_table(const ScenarioResult& r) {
  std::ostringstream out;
  out << "scenario " << r.name << " [" << r.task << "] on " << r.model << "\n";
  if (!r.error.empty()) out << "  error: " << r.error << "\n";
  out << render_report_table(r.reports);
  out << (r.pass ? "PASS" : "FAIL") << "\n";
  return out.str();
}

SuiteSummary run_suite(const std::string& dir, const RunOptions& opts) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw ConfigError("suite directory '" + dir + "' does not exist");
  std::vector<std::string> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path().string());
  std::sort(files.begin(), files.end());

  SuiteSummary summary;
  if (files.empty()) {
    summary.warning = "no scenarios found in '" + dir + "'";
    return summary;
  }
  for (const auto& file : files) {
    RunOptions sub = opts;
    if (!opts.out_override.empty()) {
      std::string stem = fs::path(file).stem().string();
      sub.out_override = opts.out_override + "/" + stem;
    }
    ScenarioResult result;
    try {
      result = run_scenario_file(file, sub);
    } catch (const std::exception& e) {
      result.name = fs::path(file).stem().string();
      result.task = "unknown";
      result.error = e.what();
      result.pass = false;
    }
    summary.pass = summary.pass && result.pass;
    summary.results.push_back(std::move(result));
  }
  return summary;
}

std::string suite_json(const SuiteSummary& s) {
  ordered_json j;
  j["pass"] = s.pass;
  j["warning"] = s.warning;
  j["scenarios"] = ordered_json::array();
  for (const auto& r : s.results) {
    ordered_json row;
    row["name"] = r.name;
    row["task"] = r.task;
    row["model"] = r.model;
    row["pass"] = r.pass;
    row["error"] = r.error;
    row["checks"] = ordered_json::array();
    for (const auto& rep : r.reports) {
      ordered_json c;
      c["name"] = rep.name;
      c["anchor"] = rep.anchor;
      c["pass"] = rep.pass;
      row["checks"].push_back(c);
    }
    j["scenarios"].push_back(row);
  }
  return j.dump(2) + "\n";
}

std::string suite_table(const SuiteSummary& s) {
  std::ostringstream out;
  out << "suite summary\n";
  if (!s.warning.empty()) out << "  warning: " << s.warning << "\n";
  size_t width = 8;
  for (const auto& r : s.results) width = std::max(width, r.name.size());
  for (const auto& r : s.results) {
    out << "  " << r.name << std::string(width - r.name.size() + 2, ' ') << (r.pass ? "pass" : "FAIL")
        << "  checks=" << r.reports.size();
    if (!r.error.empty()) out << "  error: " << r.error;
    out << "\n";
  }
  out << (s.pass ? "SUITE PASS" : "SUITE FAIL") << "\n";
  return out.str();
}

}  // namespace klab
