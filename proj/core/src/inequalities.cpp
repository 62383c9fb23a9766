#include "klab/inequalities.hpp"

#include <Eigen/Cholesky>

namespace klab {

double royden_quadratic_slack(const CurvatureData& curv, const Eigen::MatrixXcd& ghat, double A) {
  const int n = curv.n;
  const Eigen::MatrixXcd hinv = ghat.inverse();
  cplx trace = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) trace += hinv(j, i) * curv.g(i, j);
  cplx contraction = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q)
          contraction += hinv(j, i) * hinv(q, p) * curv.curvature(i, j, p, q);
  const double tr = trace.real();
  return A * tr * tr - contraction.real();
}

double royden_refined_slack(const CurvatureData& curv, const Eigen::MatrixXcd& frame, double A) {
  const int k = static_cast<int>(frame.cols());
  double sum_sq = 0.0, sum_quartic_norm = 0.0, cross = 0.0;
  for (int a = 0; a < k; ++a) {
    const double na = curv.norm_sq(frame.col(a));
    sum_sq += na;
    sum_quartic_norm += na * na;
    for (int b = 0; b < k; ++b) cross += curv.quartic(frame.col(a), frame.col(b));
  }
  return 0.5 * A * (sum_sq * sum_sq + sum_quartic_norm) - cross;
}

CheckReport royden_bound_check(const MetricField& omega, const MetricField& ghat, double A,
                               const QuadratureAtlas& atlas, const HscSearchConfig& cfg) {
  CheckReport rep("royden-quadratic-bound", "ghat-contraction of R <= A (tr_ghat omega)^2");
  const HscEstimate sup = sup_hsc(omega, atlas, cfg);
  rep.values["sup_H"] = sup.value;
  rep.bounds["A"] = A;
  if (A < sup.value) {
    rep.pass = false;
    rep.note("precondition violated: A is below the measured sup of H");
    return rep;
  }
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& p : atlas.points) {
    const CurvatureData curv = curvature_at(omega, p.z);
    worst = std::min(worst, royden_quadratic_slack(curv, ghat.metric(p.z), A));
  }
  rep.values["worst_slack"] = worst;
  rep.tolerance = 1e-8;
  rep.pass = worst >= -rep.tolerance;
  return rep;
}

CheckReport royden_refined_check(const MetricField& omega, const Eigen::MatrixXcd& ghat_matrix,
                                 const Eigen::MatrixXcd& frame, const Point& z, double A) {
  Eigen::MatrixXcd gram = frame.transpose() * ghat_matrix * frame.conjugate();
  if ((gram - Eigen::MatrixXcd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() > 1e-10)
    throw ValidationError("frame is not orthonormal for the reference metric");
  CheckReport rep("royden-refined-bound",
                  "sum R(xi_a, xi_a, xi_b, xi_b) <= A/2 ((sum |xi_a|^2)^2 + sum |xi_a|^4)");
  const CurvatureData curv = curvature_at(omega, z);
  const double slack = royden_refined_slack(curv, frame, A);
  rep.values["slack"] = slack;
  rep.bounds["A"] = A;
  rep.tolerance = 1e-8;
  rep.pass = slack >= -rep.tolerance;
  return rep;
}

std::vector<DirectionSample> direction_grid(int n, int u_res, int phase_res) {
  if (n < 2) throw ValidationError("direction grid needs n >= 2");
  std::vector<DirectionSample> out;
  const int m = n - 1;  // stick-breaking variables and phases
  std::vector<int> iu(m, 0), ip(m, 0);
  const double fact = factorial(n - 1);
  while (true) {
    std::vector<double> u(m), theta(m);
    for (int j = 0; j < m; ++j) {
      u[j] = (iu[j] + 0.5) / u_res;
      theta[j] = (ip[j] + 0.5) * kTwoPi / phase_res;
    }
    DirectionSample s;
    s.v.resize(n);
    double running = 1.0, w = fact;
    for (int j = 0; j < m; ++j) {
      s.v(j) = std::sqrt(running * (1.0 - u[j])) * (j == 0 ? cplx(1.0) : unit_phase(theta[j - 1]));
      w *= std::pow(u[j], m - 1 - j) / (u_res * static_cast<double>(phase_res));
      running *= u[j];
    }
    s.v(m) = std::sqrt(running) * unit_phase(theta[m - 1]);
    s.weight = w;
    out.push_back(std::move(s));

    int a = 2 * m - 1;
    while (a >= 0) {
      int& idx = (a < m) ? iu[a] : ip[a - m];
      const int lim = (a < m) ? u_res : phase_res;
      if (++idx < lim) break;
      idx = 0;
      --a;
    }
    if (a < 0) break;
  }
  return out;
}

CheckReport berger_identity_check(const MetricField& metric, const Point& z, int u_res,
                                  int phase_res) {
  const int n = metric.dim();
  if (n < 2) throw ValidationError("direction-average identity is degenerate for n = 1");
  CheckReport rep("direction-average-identity", "avg_directions H = 2 S / (n (n+1))");

  const CurvatureData curv = curvature_at(metric, z);
  Eigen::LLT<Eigen::MatrixXcd> llt(curv.g);
  if (llt.info() != Eigen::Success) throw NumericalError("metric not positive at sample point");
  Eigen::MatrixXcd L = llt.matrixL();
  Eigen::MatrixXcd E = L.adjoint()
                           .triangularView<Eigen::Upper>()
                           .solve(Eigen::MatrixXcd::Identity(n, n))
                           .conjugate();

  KahanSum avg;
  for (const auto& d : direction_grid(n, u_res, phase_res)) {
    const Eigen::VectorXcd xi = E * d.v;
    avg.add(d.weight * curv.quartic(xi, xi));
  }
  const double mass = std::pow(kPi, n - 1) / factorial(n - 1);
  const double lhs = avg.value();
  const double rhs = 2.0 * curv.scalar / (n * (n + 1.0));
  rep.values["lhs_direction_average"] = lhs;
  rep.values["rhs_scalar_side"] = rhs;
  rep.values["raw_integral"] = lhs * mass;
  rep.values["direction_mass"] = mass;
  const double rel = std::abs(lhs - rhs) / (1.0 + std::abs(rhs));
  rep.values["relative_error"] = rel;
  rep.tolerance = 1e-3;
  rep.pass = rel < rep.tolerance;
  return rep;
}

CheckReport product_hsc_check(const ManifoldSpec& product_spec, std::vector<MetricPtr> factors,
                              double A1, double A2, int atlas_resolution,
                              const HscSearchConfig& cfg) {
  if (product_spec.kind != ModelKind::Product || factors.size() != 2)
    throw ValidationError("product bound check needs a two-factor product");
  CheckReport rep("product-hsc-bound", "sup H(product metric) <= A1 + A2");

  for (int f = 0; f < 2; ++f) {
    const QuadratureAtlas fat = make_default_atlas(product_spec.factors[f], atlas_resolution);
    const double sup_f = sup_hsc(*factors[f], fat, cfg).value;
    rep.values[f == 0 ? "sup_H_factor_1" : "sup_H_factor_2"] = sup_f;
    const double bound_f = f == 0 ? A1 : A2;
    if (sup_f > bound_f + 1e-9) {
      rep.pass = false;
      rep.note("precondition violated: factor bound below measured factor sup H");
      return rep;
    }
  }

  MetricPtr product = make_product_metric(product_spec, std::move(factors));
  const QuadratureAtlas atlas = make_default_atlas(product_spec, atlas_resolution);
  const HscEstimate sup = sup_hsc(*product, atlas, cfg);
  rep.values["sup_H_product"] = sup.value;
  rep.bounds["A1_plus_A2"] = A1 + A2;
  rep.tolerance = 1e-6;
  rep.pass = sup.value <= A1 + A2 + rep.tolerance;
  return rep;
}

CheckReport rational_curve_bound_check(const ManifoldSpec& spec, const MetricField& metric,
                                       const QuadratureAtlas& ambient_atlas,
                                       const HscSearchConfig& cfg) {
  // Locate an embedded coordinate projective line.
  int curve_coord = -1;
  const ManifoldSpec* curve_factor = nullptr;
  if (spec.kind == ModelKind::Projective) {
    curve_coord = 0;
    curve_factor = &spec;
  } else if (spec.kind == ModelKind::Product) {
    int off = 0;
    for (const auto& f : spec.factors) {
      if (f.kind == ModelKind::Projective) {
        curve_coord = off;
        curve_factor = &f;
        break;
      }
      off += f.dim;
    }
  }
  if (curve_coord < 0)
    throw ValidationError("model contains no embedded rational curve to test");

  CheckReport rep("rational-curve-bound", "sup H >= pi / (32 area(C))");

  ManifoldSpec line = make_projective(1);
  ProjectiveAtlasOptions opts;
  opts.radial = 128;
  opts.angular = 8;
  const QuadratureAtlas line_atlas = make_projective_atlas(line, opts);
  (void)curve_factor;
  KahanSum area;
  const int n = metric.dim();
  for (const auto& p : line_atlas.points) {
    Point z(n, cplx(0.0));
    z[curve_coord] = p.z[0];
    const Eigen::MatrixXcd g = metric.metric(z);
    area.add(p.weight * 2.0 * g(curve_coord, curve_coord).real());
  }
  const double bound = kPi / (32.0 * area.value());
  const HscEstimate sup = sup_hsc(metric, ambient_atlas, cfg);
  rep.values["curve_area"] = area.value();
  rep.values["sup_H"] = sup.value;
  rep.bounds["lower_bound"] = bound;
  rep.tolerance = 1e-9;
  rep.pass = sup.value >= bound - rep.tolerance;
  return rep;
}

}  // namespace klab
