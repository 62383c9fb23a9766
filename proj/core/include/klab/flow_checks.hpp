#pragma once

#include <optional>

#include "klab/flow.hpp"
#include "klab/report.hpp"

namespace klab {

/// Existence window: the flow stays nonsingular for t < 1/(nA) - 2%, where
/// A bounds the holomorphic sectional curvature of the initial metric.
CheckReport existence_bound_check(const FlowTrajectory& traj, double A);

/// Trace comparison: max tr_{omega(t)} omega(0) <= n/(1 - nAt) at every
/// snapshot with t < min(T_num, 1/(nA)).
CheckReport trace_bound_monitor(const FlowTrajectory& traj, double A, double tol = 1e-3);

/// Singularity rate: (T_num - t) sup H(omega(t)) >= 1/n - 2% for snapshots
/// t <= 0.9 T_num. Requires a finite-time singularity.
CheckReport blowup_rate_check(const FlowTrajectory& traj, double tol = 0.02);

/// Normalized-flow functionals: the integral identity
/// int |Ric+omega|^2 omega^n = d/dt int S omega^n + int (S+1)(S+n) omega^n,
/// the decay of L(t) = e^{(n-nu-2)t} int S omega^n (when nu is defined), and
/// boundedness of the scalar curvature.
CheckReport flow_functional_monitor(const FlowTrajectory& traj, std::optional<int> nu,
                                    double identity_tol = 1e-2, double s_bound = 1e3);

/// Discrete parabolic inequality (d/dt - Laplacian) tr_{omega(t)} omega(0)
/// <= A (tr_{omega(t)} omega(0))^2 at interior nodes of interior snapshots
/// with t <= 0.9 min(T_num, 1/(nA)).
CheckReport trace_evolution_monitor(const FlowTrajectory& traj, double A, double tol = 0.05);

}  // namespace klab
