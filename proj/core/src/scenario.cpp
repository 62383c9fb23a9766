#include "klab/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include <json.hpp>

#include "klab/ansatz.hpp"

namespace klab {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& why) {
  throw ConfigError("scenario field '" + path + "': " + why);
}

void check_keys(const json& o, const std::string& path, std::initializer_list<const char*> allowed) {
  if (!o.is_object()) fail(path, "expected an object");
  for (auto it = o.begin(); it != o.end(); ++it) {
    bool ok = false;
    for (const char* key : allowed) ok = ok || it.key() == key;
    if (!ok) fail(path + "." + it.key(), "unknown field");
  }
}

const json* find(const json& o, const char* key) {
  auto it = o.find(key);
  return it == o.end() ? nullptr : &*it;
}

const json& require(const json& o, const std::string& path, const char* key) {
  const json* v = find(o, key);
  if (!v) fail(path + "." + key, "missing");
  return *v;
}

double to_num(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  return v.get<double>();
}

int to_int(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  return v.get<int>();
}

bool to_bool(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected a boolean");
  return v.get<bool>();
}

std::string to_str(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

std::vector<double> to_vec(const json& v, const std::string& path) {
  if (!v.is_array()) fail(path, "expected an array of numbers");
  std::vector<double> out;
  for (size_t i = 0; i < v.size(); ++i) out.push_back(to_num(v[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

ManifoldSpec parse_manifold(const json& o, const std::string& path) {
  check_keys(o, path, {"kind", "dim", "periods", "genus", "factors"});
  std::string kind = to_str(require(o, path, "kind"), path + ".kind");
  if (kind == "torus") {
    int dim = to_int(require(o, path, "dim"), path + ".dim");
    std::vector<std::array<double, 2>> periods;
    if (const json* p = find(o, "periods")) {
      if (!p->is_array()) fail(path + ".periods", "expected an array of [re, im] pairs");
      for (size_t i = 0; i < p->size(); ++i) {
        std::vector<double> pair = to_vec((*p)[i], path + ".periods[" + std::to_string(i) + "]");
        if (pair.size() != 2) fail(path + ".periods[" + std::to_string(i) + "]", "expected [re, im]");
        periods.push_back({pair[0], pair[1]});
      }
    }
    return make_torus(dim, periods);
  }
  if (kind == "projective") {
    int dim = to_int(require(o, path, "dim"), path + ".dim");
    return make_projective(dim);
  }
  if (kind == "curve") {
    int genus = to_int(require(o, path, "genus"), path + ".genus");
    return make_curve_data(genus);
  }
  if (kind == "product") {
    const json& f = require(o, path, "factors");
    if (!f.is_array() || f.empty()) fail(path + ".factors", "expected a nonempty array");
    std::vector<ManifoldSpec> factors;
    for (size_t i = 0; i < f.size(); ++i)
      factors.push_back(parse_manifold(f[i], path + ".factors[" + std::to_string(i) + "]"));
    return make_product(std::move(factors));
  }
  fail(path + ".kind", "expected torus|projective|curve|product");
}

ScenarioMetric parse_metric(const json& o, const std::string& path) {
  check_keys(o, path,
             {"family", "scale", "coeffs", "modes", "bumps", "max_mode", "amplitude", "factors"});
  ScenarioMetric m;
  m.family = to_str(require(o, path, "family"), path + ".family");
  if (const json* v = find(o, "scale")) m.scale = to_num(*v, path + ".scale");
  if (const json* v = find(o, "coeffs")) m.coeffs = to_vec(*v, path + ".coeffs");
  if (const json* v = find(o, "max_mode")) m.max_mode = to_int(*v, path + ".max_mode");
  if (const json* v = find(o, "amplitude")) m.amplitude = to_num(*v, path + ".amplitude");
  if (const json* v = find(o, "modes")) {
    if (!v->is_array()) fail(path + ".modes", "expected an array");
    for (size_t i = 0; i < v->size(); ++i) {
      const std::string mp = path + ".modes[" + std::to_string(i) + "]";
      const json& mo = (*v)[i];
      check_keys(mo, mp, {"amplitude", "wave", "phase"});
      FourierMode mode;
      mode.amplitude = to_num(require(mo, mp, "amplitude"), mp + ".amplitude");
      std::vector<double> wave = to_vec(require(mo, mp, "wave"), mp + ".wave");
      for (double w : wave) mode.wave.push_back(static_cast<int>(w));
      if (const json* ph = find(mo, "phase")) mode.phase = to_num(*ph, mp + ".phase");
      m.modes.push_back(std::move(mode));
    }
  }
  if (const json* v = find(o, "bumps")) {
    if (!v->is_array()) fail(path + ".bumps", "expected an array");
    for (size_t i = 0; i < v->size(); ++i) {
      const std::string bp = path + ".bumps[" + std::to_string(i) + "]";
      const json& bo = (*v)[i];
      check_keys(bo, bp, {"amplitude", "center", "width"});
      RadialBump bump;
      bump.amplitude = to_num(require(bo, bp, "amplitude"), bp + ".amplitude");
      bump.center = to_num(require(bo, bp, "center"), bp + ".center");
      bump.width = to_num(require(bo, bp, "width"), bp + ".width");
      m.bumps.push_back(bump);
    }
  }
  if (const json* v = find(o, "factors")) {
    if (!v->is_array()) fail(path + ".factors", "expected an array");
    for (size_t i = 0; i < v->size(); ++i)
      m.factors.push_back(parse_metric((*v)[i], path + ".factors[" + std::to_string(i) + "]"));
  }
  return m;
}

AnsatzParams parse_ansatz(const json& o, const std::string& path) {
  check_keys(o, path, {"kind", "nodes"});
  AnsatzParams a;
  if (const json* v = find(o, "kind")) a.kind = to_str(*v, path + ".kind");
  if (const json* v = find(o, "nodes")) a.nodes = to_int(*v, path + ".nodes");
  return a;
}

TaskKind parse_task(const std::string& s, const std::string& path) {
  if (s == "curvature") return TaskKind::Curvature;
  if (s == "hsc-sup") return TaskKind::HscSup;
  if (s == "flow") return TaskKind::Flow;
  if (s == "normalized-flow") return TaskKind::NormalizedFlow;
  if (s == "continuity") return TaskKind::Continuity;
  if (s == "chern") return TaskKind::Chern;
  if (s == "my-audit") return TaskKind::MyAudit;
  if (s == "mu-bounds") return TaskKind::MuBounds;
  if (s == "expansion") return TaskKind::Expansion;
  if (s == "suite") return TaskKind::Suite;
  fail(path, "unknown task '" + s + "'");
}

void parse_params(Scenario& sc, const json& p) {
  const std::string path = "params";
  switch (sc.task) {
    case TaskKind::Curvature:
      check_keys(p, path, {"probes", "expect_flat", "hsc_const", "einstein", "tol"});
      if (const json* v = find(p, "probes")) sc.probes = to_int(*v, path + ".probes");
      if (const json* v = find(p, "expect_flat")) sc.expect_flat = to_bool(*v, path + ".expect_flat");
      if (const json* v = find(p, "hsc_const")) sc.hsc_const = to_num(*v, path + ".hsc_const");
      if (const json* v = find(p, "einstein")) sc.einstein = to_num(*v, path + ".einstein");
      if (const json* v = find(p, "tol")) sc.curvature_tol = to_num(*v, path + ".tol");
      break;
    case TaskKind::HscSup: {
      check_keys(p, path, {"restarts", "expected", "tol", "royden_A", "berger"});
      if (const json* v = find(p, "restarts")) sc.hsc_restarts = to_int(*v, path + ".restarts");
      if (const json* v = find(p, "expected")) sc.expected_sup = to_num(*v, path + ".expected");
      if (const json* v = find(p, "tol")) sc.expected_tol = to_num(*v, path + ".tol");
      if (const json* v = find(p, "royden_A")) sc.royden_A = to_num(*v, path + ".royden_A");
      if (const json* v = find(p, "berger")) {
        check_keys(*v, path + ".berger", {"u_res", "phase_res"});
        sc.berger_res = {to_int(require(*v, path + ".berger", "u_res"), path + ".berger.u_res"),
                         to_int(require(*v, path + ".berger", "phase_res"), path + ".berger.phase_res")};
      }
      break;
    }
    case TaskKind::Flow:
    case TaskKind::NormalizedFlow:
      check_keys(p, path,
                 {"horizon", "snapshots", "rtol", "atol", "cfl", "dt_max", "dt_init",
                  "eig_floor_rel", "max_steps", "ansatz", "A", "nu", "dt_refine"});
      if (const json* v = find(p, "horizon")) sc.flow.horizon = to_num(*v, path + ".horizon");
      if (const json* v = find(p, "snapshots")) sc.flow.snapshots = to_int(*v, path + ".snapshots");
      if (const json* v = find(p, "rtol")) sc.flow.rtol = to_num(*v, path + ".rtol");
      if (const json* v = find(p, "atol")) sc.flow.atol = to_num(*v, path + ".atol");
      if (const json* v = find(p, "cfl")) sc.flow.cfl = to_num(*v, path + ".cfl");
      if (const json* v = find(p, "dt_max")) sc.flow.dt_max = to_num(*v, path + ".dt_max");
      if (const json* v = find(p, "dt_init")) sc.flow.dt_init = to_num(*v, path + ".dt_init");
      if (const json* v = find(p, "eig_floor_rel")) sc.flow.eig_floor_rel = to_num(*v, path + ".eig_floor_rel");
      if (const json* v = find(p, "max_steps")) sc.flow.max_steps = static_cast<long>(to_num(*v, path + ".max_steps"));
      if (const json* v = find(p, "ansatz")) sc.ansatz = parse_ansatz(*v, path + ".ansatz");
      if (const json* v = find(p, "A")) sc.flow_A = to_num(*v, path + ".A");
      if (const json* v = find(p, "nu")) sc.flow_nu = to_int(*v, path + ".nu");
      if (const json* v = find(p, "dt_refine")) sc.dt_refine = to_bool(*v, path + ".dt_refine");
      break;
    case TaskKind::Continuity:
      check_keys(p, path, {"t_values", "ansatz", "mu", "eps", "certificate"});
      if (const json* v = find(p, "t_values")) sc.t_values = to_vec(*v, path + ".t_values");
      if (const json* v = find(p, "ansatz")) sc.ansatz = parse_ansatz(*v, path + ".ansatz");
      if (const json* v = find(p, "mu")) sc.mu = to_num(*v, path + ".mu");
      if (const json* v = find(p, "eps")) sc.eps = to_num(*v, path + ".eps");
      if (const json* v = find(p, "certificate")) sc.family_certificate = to_bool(*v, path + ".certificate");
      break;
    case TaskKind::Chern:
    case TaskKind::MyAudit:
      check_keys(p, path, {"tol"});
      if (const json* v = find(p, "tol")) sc.curvature_tol = to_num(*v, path + ".tol");
      break;
    case TaskKind::MuBounds:
      check_keys(p, path, {"family", "parameters", "max_evals", "restarts", "simplex_scale",
                           "atlas_resolution", "tolerance", "alpha"});
      if (const json* v = find(p, "family")) {
        std::string fam = to_str(*v, path + ".family");
        if (fam == "fourier") sc.mu_search.family = MetricFamily::TorusFourier;
        else if (fam == "radial") sc.mu_search.family = MetricFamily::ProjectiveRadial;
        else fail(path + ".family", "expected fourier|radial");
      }
      if (const json* v = find(p, "parameters")) sc.mu_search.parameters = to_int(*v, path + ".parameters");
      if (const json* v = find(p, "max_evals")) sc.mu_search.max_evals = to_int(*v, path + ".max_evals");
      if (const json* v = find(p, "restarts")) sc.mu_search.restarts = to_int(*v, path + ".restarts");
      if (const json* v = find(p, "simplex_scale")) sc.mu_search.simplex_scale = to_num(*v, path + ".simplex_scale");
      if (const json* v = find(p, "atlas_resolution")) sc.mu_search.atlas_resolution = to_int(*v, path + ".atlas_resolution");
      if (const json* v = find(p, "tolerance")) sc.mu_tolerance = to_num(*v, path + ".tolerance");
      if (const json* v = find(p, "alpha")) sc.alpha_coeffs = to_vec(*v, path + ".alpha");
      break;
    case TaskKind::Expansion:
      check_keys(p, path, {"alpha", "nu", "schedule"});
      sc.alpha_coeffs = to_vec(require(p, path, "alpha"), path + ".alpha");
      sc.nu = to_int(require(p, path, "nu"), path + ".nu");
      sc.schedule = to_vec(require(p, path, "schedule"), path + ".schedule");
      break;
    case TaskKind::Suite:
      check_keys(p, path, {"dir"});
      sc.suite_dir = to_str(require(p, path, "dir"), path + ".dir");
      break;
  }
}

Scenario parse_json(const json& root, const std::string& name) {
  check_keys(root, "scenario", {"name", "task", "manifold", "metric", "atlas", "params", "out", "seed"});
  Scenario sc;
  sc.name = name;
  if (const json* v = find(root, "name")) sc.name = to_str(*v, "scenario.name");
  sc.task = parse_task(to_str(require(root, "scenario", "task"), "task"), "task");
  if (sc.task != TaskKind::Suite) {
    sc.manifold = parse_manifold(require(root, "scenario", "manifold"), "manifold");
  } else if (const json* v = find(root, "manifold")) {
    sc.manifold = parse_manifold(*v, "manifold");
  }
  if (const json* v = find(root, "metric")) {
    sc.metric = parse_metric(*v, "metric");
    sc.has_metric = true;
  }
  if (const json* v = find(root, "atlas")) {
    check_keys(*v, "atlas", {"resolution"});
    if (const json* r = find(*v, "resolution")) sc.atlas_resolution = to_int(*r, "atlas.resolution");
  }
  if (const json* v = find(root, "seed")) {
    if (!v->is_number_integer() || v->get<long long>() < 0) fail("seed", "expected a nonnegative integer");
    sc.seed = v->get<uint64_t>();
  }
  if (const json* v = find(root, "out")) sc.out = to_str(*v, "out");
  if (const json* v = find(root, "params")) parse_params(sc, *v);
  else if (sc.task == TaskKind::Expansion || sc.task == TaskKind::Suite)
    fail("params", "missing (required for this task)");
  return sc;
}

}  // namespace

std::string task_name(TaskKind task) {
  switch (task) {
    case TaskKind::Curvature: return "curvature";
    case TaskKind::HscSup: return "hsc-sup";
    case TaskKind::Flow: return "flow";
    case TaskKind::NormalizedFlow: return "normalized-flow";
    case TaskKind::Continuity: return "continuity";
    case TaskKind::Chern: return "chern";
    case TaskKind::MyAudit: return "my-audit";
    case TaskKind::MuBounds: return "mu-bounds";
    case TaskKind::Expansion: return "expansion";
    case TaskKind::Suite: return "suite";
  }
  return "unknown";
}

Scenario parse_scenario_text(const std::string& text, const std::string& name) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError("scenario '" + name + "': " + e.what());
  }
  return parse_json(root, name);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("scenario file '" + path + "' is not readable");
  std::stringstream buf;
  buf << in.rdbuf();
  std::string stem = path;
  if (auto slash = stem.find_last_of('/'); slash != std::string::npos) stem = stem.substr(slash + 1);
  if (auto dot = stem.find_last_of('.'); dot != std::string::npos) stem = stem.substr(0, dot);
  return parse_scenario_text(buf.str(), stem);
}

MetricPtr build_scenario_metric(const ManifoldSpec& spec, const ScenarioMetric& m, uint64_t seed) {
  if (m.family == "flat") return make_flat_torus_metric(spec, m.coeffs);
  if (m.family == "fourier") {
    std::vector<double> base = m.coeffs;
    if (base.empty()) base.assign(static_cast<size_t>(spec.dim), 1.0);
    return make_fourier_torus_metric(spec, base, m.modes);
  }
  if (m.family == "random-fourier") {
    Rng rng(seed);
    return random_fourier_torus_metric(spec, rng, m.max_mode, m.amplitude);
  }
  if (m.family == "fubini-study") return make_fubini_study_metric(spec, m.scale);
  if (m.family == "radial") return make_radial_metric(spec, m.scale, m.bumps);
  if (m.family == "product") {
    if (spec.kind != ModelKind::Product)
      throw ConfigError("scenario field 'metric.family': product metric on a non-product model");
    if (m.factors.size() != spec.factors.size())
      throw ConfigError("scenario field 'metric.factors': expected one entry per model factor");
    std::vector<MetricPtr> parts;
    for (size_t i = 0; i < m.factors.size(); ++i)
      parts.push_back(build_scenario_metric(spec.factors[i], m.factors[i], seed + i + 1));
    return make_product_metric(spec, parts);
  }
  throw ConfigError("scenario field 'metric.family': unknown family '" + m.family + "'");
}

Ansatz build_scenario_ansatz(const ManifoldSpec& spec, const AnsatzParams& params) {
  std::string kind = params.kind;
  if (kind == "auto") {
    if (spec.kind == ModelKind::Torus) kind = "torus-line";
    else if (spec.kind == ModelKind::Projective && spec.dim == 1) kind = "radial";
    else throw ConfigError("scenario field 'params.ansatz.kind': no automatic ansatz for this model");
  }
  if (kind == "torus-line") return Ansatz::torus_line(spec, params.nodes);
  if (kind == "radial") return Ansatz::radial(spec, params.nodes);
  throw ConfigError("scenario field 'params.ansatz.kind': expected auto|torus-line|radial");
}

}  // namespace klab
