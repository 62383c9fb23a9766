#pragma once

#include <string>
#include <vector>

#include "klab/ansatz.hpp"
#include "klab/manifold.hpp"
#include "klab/metric.hpp"

namespace klab {

enum class FlowKind { Unnormalized, Normalized };

struct FlowConfig {
  double horizon = 2.0;
  int snapshots = 160;
  double rtol = 1e-7;
  double atol = 1e-9;
  // singularity detection: minimum metric eigenvalue relative to the initial
  // scale, plus adaptive dt underflow
  double eig_floor_rel = 1e-6;
  double dt_init = 1e-6;
  double dt_min = 1e-13;
  double dt_max = 0.0;  // 0 disables the cap
  double cfl = 2.2;     // explicit stability margin for the stage operator
  long max_steps = 50000000;
};

struct FlowSnapshot {
  double t = 0.0;
  Grid phi;
  Grid g_act;
  std::vector<double> passive;
  double sup_h = 0.0;        // direction-optimal H over the grid
  double sup_abs_s = 0.0;    // max |S|
  double trace_max = 0.0;    // M(t) = max over grid of tr_{omega(t)} omega(0)
  double min_eig_rel = 0.0;  // min metric entry relative to the initial one
  double volume = 0.0;
  double scalar_integral = 0.0;        // int S omega^n
  double ric_plus_omega_sq = 0.0;      // int |Ric + omega|^2 omega^n
  double s_plus_quad = 0.0;            // int (S+1)(S+n) omega^n
  double step_residual = 0.0;          // last accepted error-norm estimate
  double class_volume = 0.0;           // volume of the evolved class
};

struct FlowTrajectory {
  FlowKind kind = FlowKind::Unnormalized;
  Ansatz ansatz;
  Grid ghat_act;               // initial reduced metric entry
  Grid rhat_act;               // its analytic Ricci entry
  std::vector<double> bhat;    // initial passive entries
  KahlerClassVector initial_class;
  std::vector<FlowSnapshot> snapshots;
  bool singular = false;
  bool floor_triggered = false;
  bool dt_underflow = false;
  double end_time = 0.0;       // T_num: singular time, else the horizon
  double initial_sup_h = 0.0;
  long accepted_steps = 0;
  long rejected_steps = 0;
  std::string stop_reason;

  explicit FlowTrajectory(Ansatz a) : ansatz(std::move(a)) {}
};

/// Potential-level Ricci flow g(t) = ghat - t*Ric(ghat) + hess(phi),
/// phi' = log det ratio, integrated by an embedded adaptive Runge-Kutta
/// scheme with a stability cap on dt. T_num is the first time the relative
/// metric floor or a dt underflow triggers; otherwise the horizon.
FlowTrajectory run_krf(const MetricField& initial, const Ansatz& ansatz, const FlowConfig& cfg);

/// Volume-normalized variant: g(t) = e^{-t} ghat - (1-e^{-t}) Ric(ghat) +
/// hess(phi), phi' = log det ratio - (n-1) t - phi; the class contracts
/// toward the canonical direction instead of moving linearly.
FlowTrajectory run_normalized_krf(const MetricField& initial, const Ansatz& ansatz,
                                  const FlowConfig& cfg);

/// Trajectory CSV: t, sup_H, M_t, min_eig, vol, S_int, ric_plus_omega_sq_int,
/// residual.
std::string trajectory_csv(const FlowTrajectory& traj);

}  // namespace klab
