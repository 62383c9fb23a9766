#include "klab/flow_checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace klab {

namespace {

// second-order derivative at t0 from values at t0 - hm, t0, t0 + hp
double dt_central(double fm, double f0, double fp, double hm, double hp) {
  return (hm * hm * fp + (hp * hp - hm * hm) * f0 - hp * hp * fm) / (hp * hm * (hp + hm));
}

Grid trace_field(const FlowTrajectory& traj, const FlowSnapshot& s) {
  Grid m = traj.ghat_act.cwiseQuotient(s.g_act);
  double pass_tr = 0.0;
  for (std::size_t j = 0; j < s.passive.size(); ++j) pass_tr += traj.bhat[j] / s.passive[j];
  m.array() += pass_tr;
  return m;
}

}  // namespace

CheckReport existence_bound_check(const FlowTrajectory& traj, double A) {
  CheckReport rep("existence-bound", "T >= 1/(n A), A = sup H(omega(0))");
  const int n = traj.ansatz.complex_dim();
  rep.tolerance = 0.02;
  rep.values["A"] = A;
  rep.values["T_num"] = traj.end_time;
  if (A <= 0.0) {
    rep.pass = !traj.singular;
    rep.note("A <= 0: the existence bound is void; flow expected to survive the horizon");
    return rep;
  }
  const double bound = 1.0 / (n * A);
  rep.bounds["existence_bound"] = bound;
  rep.values["T_times_nA"] = traj.end_time * n * A;
  const double needed = bound * (1.0 - rep.tolerance);
  if (traj.singular) {
    rep.pass = traj.end_time >= needed;
  } else if (traj.end_time >= needed) {
    rep.pass = true;
    rep.note("no singularity before the bound; horizon reached");
  } else {
    rep.pass = false;
    rep.note("trajectory ended before 1/(nA) without a singularity; bound not testable");
  }
  return rep;
}

CheckReport trace_bound_monitor(const FlowTrajectory& traj, double A, double tol) {
  if (traj.kind != FlowKind::Unnormalized)
    throw ValidationError("trace bound monitor applies to the unnormalized flow");
  CheckReport rep("trace-bound", "max tr_{omega(t)} omega(0) <= n / (1 - n A t)");
  const int n = traj.ansatz.complex_dim();
  rep.tolerance = tol;
  rep.values["A"] = A;
  bool pre_ok = true;
  if (A < traj.initial_sup_h - 1e-9 * std::max(1.0, std::abs(traj.initial_sup_h))) {
    rep.note("supplied A is below the measured sup H of the initial metric");
    pre_ok = false;
  }
  const double t_max =
      A > 0.0 ? std::min(traj.end_time, 1.0 / (n * A)) : traj.end_time + 1.0;
  double worst = -std::numeric_limits<double>::infinity();
  int checked = 0;
  for (const FlowSnapshot& s : traj.snapshots) {
    if (s.t >= t_max - 1e-12) continue;
    const double denom = 1.0 - n * A * s.t;
    if (denom <= 0.0) continue;
    const double bound = n / denom;
    worst = std::max(worst, s.trace_max / bound - 1.0);
    ++checked;
  }
  rep.values["snapshots_checked"] = checked;
  rep.values["worst_relative_violation"] = worst;
  rep.bounds["relative_violation"] = tol;
  rep.pass = pre_ok && checked > 0 && worst <= tol;
  return rep;
}

CheckReport blowup_rate_check(const FlowTrajectory& traj, double tol) {
  if (!traj.singular)
    throw ValidationError("blowup rate check requires a finite-time singularity");
  if (traj.kind != FlowKind::Unnormalized)
    throw ValidationError("blowup rate check applies to the unnormalized flow");
  CheckReport rep("blowup-rate", "(T - t) sup H(omega(t)) >= 1/n for t <= 0.9 T");
  const int n = traj.ansatz.complex_dim();
  rep.tolerance = tol;
  const double T = traj.end_time;
  double mn = std::numeric_limits<double>::infinity();
  double mx = -mn;
  int checked = 0;
  for (const FlowSnapshot& s : traj.snapshots) {
    if (s.t > 0.9 * T) continue;
    const double p = (T - s.t) * s.sup_h;
    mn = std::min(mn, p);
    mx = std::max(mx, p);
    ++checked;
  }
  rep.values["T_num"] = T;
  rep.values["snapshots_checked"] = checked;
  rep.values["min_product"] = mn;
  rep.values["max_product"] = mx;
  rep.bounds["min_product"] = (1.0 - tol) / n;
  rep.pass = checked > 0 && mn >= (1.0 - tol) / n;
  return rep;
}

CheckReport flow_functional_monitor(const FlowTrajectory& traj, std::optional<int> nu,
                                    double identity_tol, double s_bound) {
  if (traj.kind != FlowKind::Normalized)
    throw ValidationError("functional monitor expects a normalized-flow trajectory");
  if (traj.snapshots.size() < 3)
    throw ValidationError("functional monitor needs at least three snapshots");
  CheckReport rep("flow-functionals",
                  "int |Ric+w|^2 w^n = d/dt int S w^n + int (S+1)(S+n) w^n;  "
                  "L(t) = e^{(n-nu-2)t} int S w^n decays");
  const int n = traj.ansatz.complex_dim();
  rep.tolerance = identity_tol;

  double id_err = 0.0;
  const auto& snaps = traj.snapshots;
  for (std::size_t i = 1; i + 1 < snaps.size(); ++i) {
    const double hm = snaps[i].t - snaps[i - 1].t;
    const double hp = snaps[i + 1].t - snaps[i].t;
    const double dldt = dt_central(snaps[i - 1].scalar_integral, snaps[i].scalar_integral,
                                   snaps[i + 1].scalar_integral, hm, hp);
    const double lhs = snaps[i].ric_plus_omega_sq;
    const double rhs = dldt + snaps[i].s_plus_quad;
    id_err = std::max(id_err, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  rep.values["identity_max_rel_error"] = id_err;
  rep.bounds["identity_rel_error"] = identity_tol;
  bool pass = id_err <= identity_tol;

  if (nu) {
    double lmax = 0.0;
    for (const FlowSnapshot& s : snaps)
      lmax = std::max(lmax, std::exp((n - *nu - 2) * s.t) * std::abs(s.scalar_integral));
    rep.values["L_max_abs"] = lmax;
    const double lscale = std::max(1.0, std::abs(snaps.front().scalar_integral));
    if (lmax < 1e-10 * lscale) {
      rep.note("L vanishes identically to tolerance");
    } else {
      // least-squares slope of log |L| against t
      double st = 0, sl = 0, stt = 0, stl = 0;
      int m = 0;
      for (const FlowSnapshot& s : snaps) {
        const double l = std::exp((n - *nu - 2) * s.t) * std::abs(s.scalar_integral);
        if (l <= 0.0) continue;
        const double y = std::log(l);
        st += s.t;
        sl += y;
        stt += s.t * s.t;
        stl += s.t * y;
        ++m;
      }
      const double slope = (m * stl - st * sl) / (m * stt - st * st);
      rep.values["L_decay_slope"] = slope;
      rep.bounds["L_decay_slope"] = -2.0 + 0.25;
      if (slope > -2.0 + 0.25) {
        pass = false;
        rep.note("L decays slower than e^{-2t}");
      }
    }
  } else {
    rep.note("canonical class not nef in the model; decay exponent check skipped");
  }

  double smax = 0.0;
  for (const FlowSnapshot& s : snaps) smax = std::max(smax, s.sup_abs_s);
  rep.values["sup_abs_S"] = smax;
  rep.bounds["sup_abs_S"] = s_bound;
  if (smax > s_bound) {
    pass = false;
    rep.note("scalar curvature left the expected bounded range");
  }
  rep.pass = pass;
  return rep;
}

CheckReport trace_evolution_monitor(const FlowTrajectory& traj, double A, double tol) {
  if (traj.kind != FlowKind::Unnormalized)
    throw ValidationError("trace evolution monitor applies to the unnormalized flow");
  if (traj.snapshots.size() < 3)
    throw ValidationError("trace evolution monitor needs at least three snapshots");
  CheckReport rep("trace-evolution",
                  "(d/dt - Laplacian_{omega(t)}) tr_{omega(t)} omega(0) <= A (tr)^2");
  const int n = traj.ansatz.complex_dim();
  rep.tolerance = tol;
  rep.values["A"] = A;
  const double t_cap =
      0.9 * (A > 0.0 ? std::min(traj.end_time, 1.0 / (n * A)) : traj.end_time);
  const auto& snaps = traj.snapshots;
  const int N = traj.ansatz.nodes();
  const int lo = traj.ansatz.periodic() ? 0 : 2;
  const int hi = traj.ansatz.periodic() ? N : N - 2;
  double worst = -std::numeric_limits<double>::infinity();
  int checked = 0;
  for (std::size_t i = 1; i + 1 < snaps.size(); ++i) {
    if (snaps[i].t > t_cap) continue;
    const double hm = snaps[i].t - snaps[i - 1].t;
    const double hp = snaps[i + 1].t - snaps[i].t;
    const Grid mm = trace_field(traj, snaps[i - 1]);
    const Grid m0 = trace_field(traj, snaps[i]);
    const Grid mp = trace_field(traj, snaps[i + 1]);
    const Grid lap = traj.ansatz.laplacian(snaps[i].g_act, m0);
    for (int k = lo; k < hi; ++k) {
      const double dmdt = dt_central(mm(k), m0(k), mp(k), hm, hp);
      const double lhs = dmdt - lap(k);
      const double rhs = A * m0(k) * m0(k);
      worst = std::max(worst, (lhs - rhs) / std::max(1.0, std::abs(rhs)));
    }
    ++checked;
  }
  rep.values["snapshots_checked"] = checked;
  rep.values["worst_relative_violation"] = worst;
  rep.bounds["relative_violation"] = tol;
  rep.pass = checked > 0 && worst <= tol;
  return rep;
}

}  // namespace klab
