#include "klab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "klab/util.hpp"

namespace klab {

namespace {

struct ReducedSystem {
  const Ansatz& an;
  FlowKind kind;
  int n;
  const Grid& ghat;
  const Grid& rhat;
  const std::vector<double>& bhat;

  bool metric_at(double t, const Grid& phi, Grid& g) const {
    double a = 1.0, b = -t;
    if (kind == FlowKind::Normalized) {
      a = std::exp(-t);
      b = -(1.0 - a);
    }
    g = a * ghat + b * rhat + an.hessian(phi);
    return g.allFinite() && (g.array() > 0.0).all();
  }

  bool rhs(double t, const Grid& phi, Grid& g, Grid& out) const {
    if (!metric_at(t, phi, g)) return false;
    out = (g.array() / ghat.array()).log();
    if (kind == FlowKind::Normalized) {
      out.array() -= (n - 1) * t;
      out -= phi;
    }
    return true;
  }

  std::vector<double> passive_at(double t) const {
    std::vector<double> p = bhat;
    if (kind == FlowKind::Normalized) {
      const double a = std::exp(-t);
      for (double& x : p) x *= a;
    }
    return p;
  }
};

FlowSnapshot make_snapshot(const ReducedSystem& sys, const KahlerClassVector& alpha0, double t,
                           const Grid& phi, double step_residual) {
  FlowSnapshot s;
  s.t = t;
  s.phi = phi;
  Grid g;
  if (!sys.metric_at(t, phi, g)) throw NumericalError("flow snapshot at a degenerate metric");
  s.g_act = g;
  s.passive = sys.passive_at(t);
  const Grid ric = sys.an.ricci_from_metric(g);
  const Grid S = ric.cwiseQuotient(g);
  const double smax = S.maxCoeff(), smin = S.minCoeff();
  // passive directions are flat, so for n >= 2 the direction-optimal H at a
  // node is the positive part of the active sectional value
  s.sup_h = sys.n >= 2 ? std::max(smax, 0.0) : smax;
  s.sup_abs_s = std::max(std::abs(smax), std::abs(smin));
  double pass_tr = 0.0, pass_ratio = 1.0;
  for (std::size_t j = 0; j < s.passive.size(); ++j) {
    pass_tr += sys.bhat[j] / s.passive[j];
    pass_ratio = std::min(pass_ratio, s.passive[j] / sys.bhat[j]);
  }
  s.trace_max = (sys.ghat.array() / g.array()).maxCoeff() + pass_tr;
  s.min_eig_rel = std::min((g.array() / sys.ghat.array()).minCoeff(), pass_ratio);
  const Grid ones = Grid::Ones(g.size());
  s.volume = sys.an.integrate(ones, g, s.passive);
  s.scalar_integral = sys.an.integrate(S, g, s.passive);
  const Grid r1 = S.array() + 1.0;
  const Grid rq = r1.array().square() + double(sys.n - 1);
  s.ric_plus_omega_sq = sys.an.integrate(rq, g, s.passive);
  const Grid sq = r1.array() * (S.array() + double(sys.n));
  s.s_plus_quad = sys.an.integrate(sq, g, s.passive);
  s.step_residual = step_residual;
  const ManifoldSpec& spec = sys.an.spec();
  const KahlerClassVector ct = sys.kind == FlowKind::Normalized
                                   ? normalized_flow_class(spec, alpha0, t)
                                   : flow_class(spec, alpha0, t);
  s.class_volume = class_volume(spec, ct);
  return s;
}

FlowTrajectory integrate_flow(const MetricField& initial, const Ansatz& an, const FlowConfig& cfg,
                              FlowKind kind) {
  if (cfg.horizon <= 0.0) throw ValidationError("flow horizon must be positive");
  if (cfg.snapshots < 3) throw ValidationError("flow needs at least 3 snapshots");
  const auto cls = initial.cohomology_class();
  if (!cls) throw ValidationError("flow requires a metric with a known cohomology class");
  const ReducedMetric red = an.reduce(initial);

  FlowTrajectory traj(an);
  traj.kind = kind;
  traj.ghat_act = red.g_act;
  traj.rhat_act = red.ric_act;
  traj.bhat = red.passive;
  traj.initial_class = *cls;
  const ReducedSystem sys{an, kind, an.complex_dim(), traj.ghat_act, traj.rhat_act, traj.bhat};

  const int N = an.nodes();
  const Eigen::VectorXd rowsum = an.hessian_matrix().cwiseAbs().rowwise().sum();
  const auto stable_dt = [&](const Grid& g) {
    const double m = (rowsum.array() / g.array()).maxCoeff();
    return m > 0.0 ? cfg.cfl / m : cfg.horizon;
  };
  const auto cap = [&](double h, const Grid& g) {
    h = std::min(h, stable_dt(g));
    return cfg.dt_max > 0.0 ? std::min(h, cfg.dt_max) : h;
  };

  Grid phi = Grid::Zero(N), g(N), gs(N), gnew(N), k1(N), k2(N), k3(N), k4(N), y3(N), err(N);
  if (!sys.rhs(0.0, phi, g, k1)) throw NumericalError("initial reduced metric is not positive");

  traj.snapshots.push_back(make_snapshot(sys, traj.initial_class, 0.0, phi, 0.0));
  traj.initial_sup_h = traj.snapshots.front().sup_h;

  const double snap_dt = cfg.horizon / cfg.snapshots;
  int next_snap = 1;
  double t = 0.0;
  double h = cap(cfg.dt_init, g);
  double last_res = 0.0;

  while (t < cfg.horizon) {
    if (traj.accepted_steps + traj.rejected_steps >= cfg.max_steps) {
      traj.stop_reason = "step budget exhausted before the horizon";
      break;
    }
    if (cfg.horizon - t <= cfg.dt_min) break;
    h = std::min(h, cfg.horizon - t);
    const double t_snap = snap_dt * next_snap;
    if (next_snap <= cfg.snapshots && t + h > t_snap) h = t_snap - t;
    if (h < cfg.dt_min) {
      traj.singular = true;
      traj.dt_underflow = true;
      traj.stop_reason = "adaptive dt underflow (singularity with lower confidence)";
      break;
    }

    bool ok = sys.rhs(t + 0.5 * h, phi + (0.5 * h) * k1, gs, k2) &&
              sys.rhs(t + 0.75 * h, phi + (0.75 * h) * k2, gs, k3);
    if (ok) {
      y3 = phi + h * ((2.0 / 9.0) * k1 + (1.0 / 3.0) * k2 + (4.0 / 9.0) * k3);
      ok = sys.rhs(t + h, y3, gnew, k4);
    }
    if (!ok) {
      ++traj.rejected_steps;
      h *= 0.5;
      continue;
    }

    err = h * ((-5.0 / 72.0) * k1 + (1.0 / 12.0) * k2 + (1.0 / 9.0) * k3 + (-1.0 / 8.0) * k4);
    double acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const double sc = cfg.atol + cfg.rtol * std::max(std::abs(phi(i)), std::abs(y3(i)));
      const double q = err(i) / sc;
      acc += q * q;
    }
    const double enorm = std::sqrt(acc / N);
    if (!std::isfinite(enorm)) {
      ++traj.rejected_steps;
      h *= 0.5;
      continue;
    }

    if (enorm <= 1.0) {
      t += h;
      phi.swap(y3);
      k1.swap(k4);
      g.swap(gnew);
      ++traj.accepted_steps;
      last_res = enorm;

      double min_rel = (g.array() / traj.ghat_act.array()).minCoeff();
      if (kind == FlowKind::Normalized && !traj.bhat.empty())
        min_rel = std::min(min_rel, std::exp(-t));
      if (min_rel < cfg.eig_floor_rel) {
        traj.singular = true;
        traj.floor_triggered = true;
        traj.stop_reason = "metric eigenvalue fell below the relative floor";
        break;
      }
      if (next_snap <= cfg.snapshots && t >= t_snap - 1e-13 * cfg.horizon) {
        traj.snapshots.push_back(make_snapshot(sys, traj.initial_class, t, phi, last_res));
        ++next_snap;
      }
      const double fac =
          enorm > 0.0 ? std::clamp(0.9 * std::pow(enorm, -1.0 / 3.0), 0.2, 5.0) : 5.0;
      h = cap(h * fac, g);
    } else {
      ++traj.rejected_steps;
      h *= std::max(0.2, 0.9 * std::pow(enorm, -1.0 / 3.0));
    }
  }

  traj.end_time = t;
  if (traj.stop_reason.empty())
    traj.stop_reason = traj.singular ? "singular time detected" : "reached the horizon";
  if (traj.snapshots.back().t < t - 1e-12 * std::max(1.0, t))
    traj.snapshots.push_back(make_snapshot(sys, traj.initial_class, t, phi, last_res));
  return traj;
}

}  // namespace

FlowTrajectory run_krf(const MetricField& initial, const Ansatz& ansatz, const FlowConfig& cfg) {
  return integrate_flow(initial, ansatz, cfg, FlowKind::Unnormalized);
}

FlowTrajectory run_normalized_krf(const MetricField& initial, const Ansatz& ansatz,
                                  const FlowConfig& cfg) {
  return integrate_flow(initial, ansatz, cfg, FlowKind::Normalized);
}

std::string trajectory_csv(const FlowTrajectory& traj) {
  std::string out = "t,sup_H,M_t,min_eig,vol,S_int,ric_plus_omega_sq_int,residual\n";
  char buf[256];
  for (const FlowSnapshot& s : traj.snapshots) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", s.t,
                  s.sup_h, s.trace_max, s.min_eig_rel, s.volume, s.scalar_integral,
                  s.ric_plus_omega_sq, s.step_residual);
    out += buf;
  }
  return out;
}

}  // namespace klab
