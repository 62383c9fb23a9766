#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "klab/flow.hpp"
#include "klab/manifold.hpp"
#include "klab/metric.hpp"
#include "klab/mu_bounds.hpp"

namespace klab {

/// Configuration error: the scenario file is malformed or asks for an
/// invalid combination. Messages name the offending field.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class TaskKind {
  Curvature,
  HscSup,
  Flow,
  NormalizedFlow,
  Continuity,
  Chern,
  MyAudit,
  MuBounds,
  Expansion,
  Suite,
};

std::string task_name(TaskKind task);

/// Metric description; recursive for product metrics.
struct ScenarioMetric {
  std::string family;  // flat | fourier | random-fourier | fubini-study | radial | product
  double scale = 1.0;
  std::vector<double> coeffs;
  std::vector<FourierMode> modes;
  std::vector<RadialBump> bumps;
  int max_mode = 2;          // random-fourier
  double amplitude = 0.02;   // random-fourier
  std::vector<ScenarioMetric> factors;
};

struct AnsatzParams {
  std::string kind = "auto";  // auto | torus-line | radial
  int nodes = 256;
};

/// One self-contained run description: model, metric, quadrature budget,
/// task and its parameters. Replaying the same file with the same seed
/// reproduces every reported number.
struct Scenario {
  std::string name;
  TaskKind task = TaskKind::Curvature;
  ManifoldSpec manifold;
  bool has_metric = false;
  ScenarioMetric metric;
  int atlas_resolution = 0;
  uint64_t seed = 1;
  std::string out;

  // curvature
  int probes = 32;
  bool expect_flat = false;
  std::optional<double> hsc_const;
  std::optional<double> einstein;
  double curvature_tol = 1e-8;

  // hsc-sup
  int hsc_restarts = 16;
  std::optional<double> expected_sup;
  double expected_tol = 1e-6;
  std::optional<double> royden_A;
  std::optional<std::pair<int, int>> berger_res;  // (u_res, phase_res)

  // flow
  FlowConfig flow;
  AnsatzParams ansatz;
  std::optional<double> flow_A;   // override for the measured initial sup H
  std::optional<int> flow_nu;     // override for the decay exponent check
  bool dt_refine = false;

  // continuity
  std::vector<double> t_values;
  std::optional<double> mu;
  std::optional<double> eps;
  bool family_certificate = false;

  // mu-bounds
  MuSearchConfig mu_search;
  double mu_tolerance = 1e-3;
  std::optional<std::vector<double>> alpha_coeffs;  // also used by expansion

  // expansion
  int nu = 0;
  std::vector<double> schedule;

  // suite
  std::string suite_dir;
};

Scenario parse_scenario_text(const std::string& text, const std::string& name);
Scenario load_scenario(const std::string& path);

/// Builds the metric described by the scenario on the given model. Random
/// families draw from a generator seeded with `seed`.
MetricPtr build_scenario_metric(const ManifoldSpec& spec, const ScenarioMetric& m, uint64_t seed);

/// Reduction ansatz for flow and continuity tasks.
Ansatz build_scenario_ansatz(const ManifoldSpec& spec, const AnsatzParams& params);

}  // namespace klab
