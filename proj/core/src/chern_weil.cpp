#include "klab/chern_weil.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>

#include "klab/util.hpp"

namespace klab {

namespace {

struct PermTable {
  std::vector<std::vector<int>> perm;
  std::vector<double> sign;
};

const PermTable& perm_table(int n) {
  static const std::vector<PermTable> tables = [] {
    std::vector<PermTable> all(7);
    for (int n = 1; n <= 6; ++n) {
      std::vector<int> p(static_cast<size_t>(n));
      std::iota(p.begin(), p.end(), 0);
      do {
        int inv = 0;
        for (int a = 0; a < n; ++a)
          for (int b = a + 1; b < n; ++b)
            if (p[a] > p[b]) ++inv;
        all[static_cast<size_t>(n)].perm.push_back(p);
        all[static_cast<size_t>(n)].sign.push_back(inv % 2 ? -1.0 : 1.0);
      } while (std::next_permutation(p.begin(), p.end()));
    }
    return all;
  }();
  return tables[static_cast<size_t>(n)];
}

cplx wedge_top_coeff_cplx(const std::vector<Eigen::MatrixXcd>& forms) {
  const int n = static_cast<int>(forms.size());
  if (n == 0) return 1.0;
  if (n > 6) throw ValidationError("wedge coefficient supports at most six factors");
  for (const auto& m : forms)
    if (m.rows() != n || m.cols() != n)
      throw ValidationError("wedge factor shape does not match the factor count");
  const PermTable& tab = perm_table(n);
  cplx acc = 0.0;
  for (size_t a = 0; a < tab.perm.size(); ++a) {
    for (size_t b = 0; b < tab.perm.size(); ++b) {
      cplx prod = tab.sign[a] * tab.sign[b];
      for (int k = 0; k < n; ++k) prod *= forms[static_cast<size_t>(k)](tab.perm[a][static_cast<size_t>(k)], tab.perm[b][static_cast<size_t>(k)]);
      acc += prod;
    }
  }
  return acc;
}

// Generator index owned by (factor, local slot) for a product basis.
std::vector<std::vector<int>> factor_basis_map(const ManifoldSpec& spec) {
  std::vector<std::vector<int>> map(spec.factors.size());
  for (int i = 0; i < spec.basis_size(); ++i) {
    auto f = static_cast<size_t>(spec.basis_factor[static_cast<size_t>(i)]);
    auto l = static_cast<size_t>(spec.basis_local[static_cast<size_t>(i)]);
    if (map[f].size() <= l) map[f].resize(l + 1, -1);
    map[f][l] = i;
  }
  return map;
}

void check_positive(const Eigen::MatrixXcd& g) {
  Eigen::LLT<Eigen::MatrixXcd> llt(g);
  if (llt.info() != Eigen::Success || !g.allFinite())
    throw NumericalError("degenerate metric at a quadrature point");
}

}  // namespace

double wedge_top_coeff(const std::vector<Eigen::MatrixXcd>& forms) {
  return wedge_top_coeff_cplx(forms).real();
}

double ChernSample::c2_wedge(const std::vector<Eigen::MatrixXcd>& fillers) const {
  if (static_cast<int>(fillers.size()) != n - 2)
    throw ValidationError("c2 wedge needs exactly n-2 filler forms");
  Eigen::MatrixXcd tr = Eigen::MatrixXcd::Zero(n, n);
  for (int p = 0; p < n; ++p) tr += theta[static_cast<size_t>(p) * n + p];
  std::vector<Eigen::MatrixXcd> slots;
  slots.reserve(static_cast<size_t>(n));
  slots.push_back(tr);
  slots.push_back(tr);
  for (const auto& f : fillers) slots.push_back(f);
  cplx acc = wedge_top_coeff_cplx(slots);
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) {
      slots[0] = theta[static_cast<size_t>(p) * n + q];
      slots[1] = theta[static_cast<size_t>(q) * n + p];
      acc -= wedge_top_coeff_cplx(slots);
    }
  }
  return (acc / (8.0 * kPi * kPi)).real();
}

ChernSample chern_sample(const CurvatureData& curv) {
  ChernSample s;
  s.n = curv.n;
  s.g = curv.g;
  s.c1 = curv.ricci / kTwoPi;
  s.theta.assign(static_cast<size_t>(curv.n) * curv.n, Eigen::MatrixXcd::Zero(curv.n, curv.n));
  for (int k = 0; k < curv.n; ++k) {
    for (int l = 0; l < curv.n; ++l) {
      // Theta^p_q(k,l) = g^{jbar p} R_{q jbar k lbar} = (R_kl * g_inv)(q, p)
      Eigen::MatrixXcd contracted = curv.R[static_cast<size_t>(k) * curv.n + l] * curv.g_inv;
      for (int p = 0; p < curv.n; ++p)
        for (int q = 0; q < curv.n; ++q) s.theta[static_cast<size_t>(p) * curv.n + q](k, l) = contracted(q, p);
    }
  }
  return s;
}

ChernData chern_class_data(const ManifoldSpec& spec) {
  ChernData out;
  out.n = spec.dim;
  out.c1_class = spec.c1;
  const int m = spec.basis_size();
  out.c2_class = Eigen::MatrixXd::Zero(m, m);
  switch (spec.kind) {
    case ModelKind::Torus:
    case ModelKind::CurveData:
      break;
    case ModelKind::Projective:
      if (spec.dim >= 2) out.c2_class(0, 0) = binomial(spec.dim + 1, 2);
      break;
    case ModelKind::Product: {
      auto map = factor_basis_map(spec);
      std::vector<Eigen::VectorXd> c1_parts;
      for (size_t f = 0; f < spec.factors.size(); ++f) {
        ChernData sub = chern_class_data(spec.factors[f]);
        Eigen::VectorXd v = Eigen::VectorXd::Zero(m);
        for (int a = 0; a < sub.c1_class.size(); ++a) {
          v(map[f][static_cast<size_t>(a)]) = sub.c1_class[a];
          for (int b = 0; b < sub.c1_class.size(); ++b)
            out.c2_class(map[f][static_cast<size_t>(a)], map[f][static_cast<size_t>(b)]) += sub.c2_class(a, b);
        }
        c1_parts.push_back(std::move(v));
      }
      for (size_t f = 0; f < c1_parts.size(); ++f)
        for (size_t h = f + 1; h < c1_parts.size(); ++h)
          out.c2_class += 0.5 * (c1_parts[f] * c1_parts[h].transpose() +
                                 c1_parts[h] * c1_parts[f].transpose());
      break;
    }
  }
  return out;
}

ChernData chern_forms(const ManifoldSpec& spec, const MetricPtr& metric,
                      const QuadratureAtlas& atlas) {
  if (!metric) throw ValidationError("chern_forms needs a metric");
  const int n = spec.dim;
  if (metric->dim() != n) throw ValidationError("metric dimension does not match the model");
  ChernData out = chern_class_data(spec);
  MetricPtr held = metric;
  out.sample = [held](const Point& z) { return chern_sample(curvature_at(*held, z)); };
  out.has_forms = true;

  const double cell = std::pow(2.0, n);  // Theta_n against the real volume
  const double nfact = factorial(n);
  KahanSum c1_acc, c2_acc, vol_acc;
  std::vector<Eigen::MatrixXcd> ones(static_cast<size_t>(n));
  std::vector<Eigen::MatrixXcd> fill(n >= 2 ? static_cast<size_t>(n - 2) : 0);
  for (const AtlasPoint& ap : atlas.points) {
    CurvatureData curv = curvature_at(*held, ap.z);
    check_positive(curv.g);
    ChernSample s = chern_sample(curv);
    vol_acc.add(ap.weight * cell * nfact * curv.g.determinant().real());
    std::fill(ones.begin(), ones.end(), s.c1);
    c1_acc.add(ap.weight * cell * wedge_top_coeff(ones));
    if (n >= 2) {
      std::fill(fill.begin(), fill.end(), s.g);
      c2_acc.add(ap.weight * cell * s.c2_wedge(fill));
    }
  }
  out.c1_top = c1_acc.value();
  out.c2_top = c2_acc.value();
  out.volume = vol_acc.value();
  return out;
}

double class_pair_quadratic(const ManifoldSpec& spec, const Eigen::MatrixXd& quad,
                            const std::vector<KahlerClassVector>& rest) {
  const int m = spec.basis_size();
  if (quad.rows() != m || quad.cols() != m)
    throw ValidationError("pairing matrix does not match the generator basis");
  if (static_cast<int>(rest.size()) != spec.dim - 2)
    throw ValidationError("quadratic class pairing needs exactly n-2 companion classes");
  std::vector<KahlerClassVector> args(static_cast<size_t>(spec.dim), KahlerClassVector::zero(m));
  for (size_t r = 0; r < rest.size(); ++r) args[2 + r] = rest[r];
  double acc = 0.0;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (quad(a, b) == 0.0) continue;
      args[0] = KahlerClassVector::zero(m);
      args[0][a] = 1.0;
      args[1] = KahlerClassVector::zero(m);
      args[1][b] = 1.0;
      acc += quad(a, b) * class_pairing(spec, args);
    }
  }
  return acc;
}

Eigen::MatrixXd my_defect_matrix(const ChernData& data) {
  const int m = data.c1_class.size();
  Eigen::VectorXd v(m);
  for (int a = 0; a < m; ++a) v(a) = data.c1_class[a];
  return (2.0 * (data.n + 1) / data.n) * data.c2_class - v * v.transpose();
}

double my_defect_MY1(const ManifoldSpec& spec, const ChernData& data) {
  if (spec.dim < 2) throw ValidationError("defect pairing needs complex dimension at least two");
  KahlerClassVector kappa = spec.canonical_class();
  std::vector<KahlerClassVector> rest(static_cast<size_t>(spec.dim - 2), kappa);
  return class_pair_quadratic(spec, my_defect_matrix(data), rest);
}

double my_defect_weighted(const ManifoldSpec& spec, const ChernData& data, int nu,
                          const KahlerClassVector& alpha) {
  if (spec.dim < 3) throw ValidationError("weighted defect needs complex dimension at least three");
  if (nu < 0 || nu > spec.dim - 2)
    throw ValidationError("canonical weight nu must lie in [0, n-2]");
  if (!in_nef_cone(spec, alpha)) throw ValidationError("alpha must be nef in the model cone");
  KahlerClassVector kappa = spec.canonical_class();
  std::vector<KahlerClassVector> rest;
  rest.reserve(static_cast<size_t>(spec.dim - 2));
  for (int j = 0; j < nu; ++j) rest.push_back(kappa);
  for (int j = 0; j < spec.dim - 2 - nu; ++j) rest.push_back(alpha);
  return class_pair_quadratic(spec, my_defect_matrix(data), rest);
}

CwAudit cw_inequality_audit(const ManifoldSpec& spec, const MetricPtr& metric,
                            const QuadratureAtlas& atlas, double tol) {
  const int n = spec.dim;
  if (n < 2) throw ValidationError("inequality audit needs complex dimension at least two");
  if (!metric) throw ValidationError("inequality audit needs a metric");
  auto cls = metric->cohomology_class();
  if (!cls) throw ValidationError("audit requires a metric with a known cohomology class");

  CwAudit out;
  ChernData data = chern_class_data(spec);
  std::vector<KahlerClassVector> rest(static_cast<size_t>(n - 2), *cls);
  out.lhs = class_pair_quadratic(spec, my_defect_matrix(data), rest);

  const double cell = std::pow(2.0, n);
  const double nfact = factorial(n);
  KahanSum acc;
  for (const AtlasPoint& ap : atlas.points) {
    CurvatureData curv = curvature_at(*metric, ap.z);
    check_positive(curv.g);
    Eigen::MatrixXcd rp = curv.g_inv * (curv.ricci + curv.g);
    double norm_sq = (rp * rp).trace().real();
    acc.add(ap.weight * cell * nfact * curv.g.determinant().real() * norm_sq);
  }
  out.curvature_integral = acc.value();
  out.rhs = -(n + 2.0) / (4.0 * kPi * kPi * n * n * (n - 1.0)) * out.curvature_integral;
  out.slack = out.lhs - out.rhs;

  CheckReport rep("cw-inequality",
                  "(2(n+1)/n c2 - c1^2).[omega]^{n-2} >= -(n+2)/(4 pi^2 n^2 (n-1)) "
                  "int |Ric+omega|^2 omega^n");
  const double scale = std::max({1.0, std::abs(out.lhs), std::abs(out.rhs)});
  rep.values["lhs"] = out.lhs;
  rep.values["rhs"] = out.rhs;
  rep.values["slack"] = out.slack;
  rep.values["curvature_integral"] = out.curvature_integral;
  rep.bounds["slack_min"] = -tol * scale;
  rep.tolerance = tol;
  rep.pass = out.slack >= -tol * scale;
  rep.note("norm convention: |omega|^2 = n");
  out.report = std::move(rep);
  return out;
}

namespace {

struct DecaySummary {
  bool ok = false;
  bool zero = false;
  double first = 0.0;
  double last = 0.0;
  double rate = 0.0;
};

DecaySummary assess_decay(const std::vector<double>& eps, const std::vector<double>& dev,
                          double scale) {
  DecaySummary d;
  d.first = dev.front();
  d.last = dev.back();
  const double tiny = 1e-10 * std::max(1.0, scale);
  if (*std::max_element(dev.begin(), dev.end()) <= tiny) {
    d.ok = true;
    d.zero = true;
    return d;
  }
  std::vector<double> xs, ys;
  for (size_t k = 0; k < dev.size(); ++k) {
    if (dev[k] > 1e-14 * std::max(1.0, scale)) {
      xs.push_back(std::log(eps[k]));
      ys.push_back(std::log(dev[k]));
    }
  }
  if (xs.size() < 2) {
    d.ok = d.last <= tiny;
    return d;
  }
  double mx = 0.0, my = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    mx += xs[k];
    my += ys[k];
  }
  mx /= static_cast<double>(xs.size());
  my /= static_cast<double>(xs.size());
  double sxx = 0.0, sxy = 0.0;
  for (size_t k = 0; k < xs.size(); ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  d.rate = sxx > 0.0 ? sxy / sxx : 0.0;
  d.ok = d.rate >= 0.8 && d.last <= d.first * (1.0 + 1e-9);
  return d;
}

}  // namespace

CheckReport asymptotic_expansion_check(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                                       int nu, const std::vector<double>& schedule) {
  const int n = spec.dim;
  if (n < 3) throw ValidationError("expansion checks need complex dimension at least three");
  if (nu < 0 || nu > n - 2) throw ValidationError("canonical weight nu must lie in [0, n-2]");
  if (schedule.size() < 2)
    throw ValidationError("schedule must contain at least two decreasing values");
  for (size_t k = 0; k < schedule.size(); ++k) {
    if (!(schedule[k] > 0.0)) throw ValidationError("schedule values must be positive");
    if (k > 0 && !(schedule[k] < schedule[k - 1]))
      throw ValidationError("schedule must be strictly decreasing");
  }
  if (!in_nef_cone(spec, alpha)) throw ValidationError("alpha must be nef in the model cone");

  ChernData data = chern_class_data(spec);
  Eigen::MatrixXd D = my_defect_matrix(data);
  KahlerClassVector kappa = spec.canonical_class();
  const int slots = n - 2;

  // (2 pi)^j * a_scale^{slots-j} * D.(kappa^j, alpha^{slots-j}); shared by the
  // closed-form limits and the brute-force expansion so the two agree exactly.
  auto term_value = [&](int j, double a_scale) {
    std::vector<KahlerClassVector> rest;
    rest.reserve(static_cast<size_t>(slots));
    for (int i = 0; i < j; ++i) rest.push_back(kappa);
    for (int i = 0; i < slots - j; ++i) rest.push_back(alpha);
    double c = 1.0;
    for (int i = 0; i < j; ++i) c *= kTwoPi;
    for (int i = 0; i < slots - j; ++i) c *= a_scale;
    return c * class_pair_quadratic(spec, D, rest);
  };

  auto direct = [&](const KahlerClassVector& cls, double pref) {
    std::vector<KahlerClassVector> rest(static_cast<size_t>(slots), cls);
    return pref * class_pair_quadratic(spec, D, rest);
  };

  // Monomial multiplicities of the binomial expansion, counted one factor
  // assignment at a time.
  std::vector<long> count(static_cast<size_t>(slots) + 1, 0);
  for (unsigned mask = 0; mask < (1u << slots); ++mask)
    ++count[static_cast<size_t>(std::popcount(mask))];

  const double weighted_defect = class_pair_quadratic(spec, D, [&] {
    std::vector<KahlerClassVector> rest;
    for (int i = 0; i < nu; ++i) rest.push_back(kappa);
    for (int i = 0; i < slots - nu; ++i) rest.push_back(alpha);
    return rest;
  }());

  const double limit_main = binomial(slots, nu) * term_value(nu, 2.0 * n);
  const double limit_brute = static_cast<double>(count[static_cast<size_t>(nu)]) * term_value(nu, 2.0 * n);
  const double brute_diff = limit_main - limit_brute;
  const double limit_mu = binomial(slots, nu) * term_value(nu, 3.0 * n);
  const double limit_flow = binomial(slots, nu) * term_value(nu, 1.0);

  // Volume-side coefficient: eps^{-(n-nu-2)} 4n^3 (2 pi kappa + 2n eps alpha)^n
  // has leading term C eps^2.
  double vol_coeff = 4.0 * n * n * n * binomial(n, nu);
  for (int i = 0; i < nu; ++i) vol_coeff *= kTwoPi;
  for (int i = 0; i < n - nu; ++i) vol_coeff *= 2.0 * n;
  {
    std::vector<KahlerClassVector> rest;
    for (int i = 0; i < nu; ++i) rest.push_back(kappa);
    for (int i = 0; i < n - nu; ++i) rest.push_back(alpha);
    vol_coeff *= class_pairing(spec, rest);
  }

  std::vector<double> dev_main, dev_mu, dev_flow, dev_vol;
  double value_first = 0.0, value_last = 0.0;
  for (size_t k = 0; k < schedule.size(); ++k) {
    const double eps = schedule[k];
    const double pref = std::pow(eps, -static_cast<double>(n - nu - 2));
    KahlerClassVector beta = kTwoPi * kappa + (2.0 * n * eps) * alpha;
    const double e_main = direct(beta, pref);
    if (k == 0) value_first = e_main;
    value_last = e_main;
    dev_main.push_back(std::abs(e_main - limit_main));

    KahlerClassVector beta_mu = kTwoPi * kappa + (3.0 * n * eps) * alpha;
    dev_mu.push_back(std::abs(direct(beta_mu, pref) - limit_mu));

    const double t = -std::log(eps);
    dev_flow.push_back(std::abs(direct(normalized_flow_class(spec, alpha, t), pref) - limit_flow));

    const double g_vol = pref * 4.0 * n * n * n * class_volume(spec, beta);
    dev_vol.push_back(std::abs(g_vol / (eps * eps) - vol_coeff));
  }

  DecaySummary dm = assess_decay(schedule, dev_main, std::max(1.0, std::abs(limit_main)));
  DecaySummary du = assess_decay(schedule, dev_mu, std::max(1.0, std::abs(limit_mu)));
  DecaySummary df = assess_decay(schedule, dev_flow, std::max(1.0, std::abs(limit_flow)));
  DecaySummary dv = assess_decay(schedule, dev_vol, std::max(1.0, std::abs(vol_coeff)));

  CheckReport rep("asymptotic-expansion",
                  "eps^{-(n-nu-2)} defect.(2 pi c1(K) + 2n eps alpha)^{n-2} -> "
                  "binom(n-2,nu) (2 pi)^nu (2n)^{n-nu-2} defect.c1(K)^nu.alpha^{n-nu-2}");
  rep.values["limit"] = limit_main;
  rep.values["brute_minus_closed"] = brute_diff;
  rep.values["weighted_defect"] = weighted_defect;
  rep.values["value_first"] = value_first;
  rep.values["value_last"] = value_last;
  rep.values["dev_first"] = dm.first;
  rep.values["dev_last"] = dm.last;
  rep.values["rate"] = dm.rate;
  rep.values["limit_mu_variant"] = limit_mu;
  rep.values["dev_last_mu_variant"] = du.last;
  rep.values["limit_flow_variant"] = limit_flow;
  rep.values["dev_last_flow_variant"] = df.last;
  rep.values["volume_coeff"] = vol_coeff;
  rep.values["volume_dev_last"] = dv.last;
  rep.bounds["brute_match"] = 0.0;
  rep.pass = brute_diff == 0.0 && dm.ok && du.ok && df.ok && dv.ok;
  if (dm.zero) rep.note("main schedule values identically zero to tolerance");
  if (dv.zero) rep.note("volume-side values match the eps^2 coefficient to tolerance");
  return rep;
}

}  // namespace klab
