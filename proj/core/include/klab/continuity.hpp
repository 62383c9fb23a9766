#pragma once

#include <optional>
#include <string>
#include <vector>

#include "klab/ansatz.hpp"
#include "klab/report.hpp"

namespace klab {

struct ContinuityConfig {
  int max_newton = 60;
  double tol = 1e-11;  // sup-norm target for the Monge-Ampere residual
  double plateau_tol = 1e-8;  // accept a round-off stall below this residual
  int max_damping = 25;
  bool auto_continuation = true;  // retry through a parameter ladder on failure
};

/// Solution of Ric(omega) = -omega + t*omega_ref on a reduction, stored as
/// omega = (t*omega_ref - Ric(omega_ref)) + sqrt(-1) del delbar u.
struct ContinuitySolution {
  double t = 0.0;
  Ansatz ansatz;
  Grid u;
  Grid g_act;                    // active entry of omega(t)
  std::vector<double> passive;   // passive entries of omega(t)
  Grid ref_g_act;                // reduced reference metric
  std::vector<double> ref_passive;
  KahlerClassVector solution_class;
  bool converged = false;
  int newton_iters = 0;
  double newton_residual = 0.0;
  std::vector<double> residual_history;
  double trace_max = 0.0;        // max over grid of tr_{omega(t)} omega_ref
  double ref_norm_sq_max = 0.0;  // max over grid of |omega_ref|^2_{omega(t)}
  double equation_residual = 0.0;  // sup |Ric(omega)+omega-t omega_ref| / sup |t omega_ref|
  std::string note;

  explicit ContinuitySolution(Ansatz a) : ansatz(std::move(a)) {}
};

/// Damped-Newton solve of the reduced elliptic Monge-Ampere equation
/// (chi_t + sqrt(-1) del delbar u)^n = e^u omega_ref^n with
/// chi_t = t*omega_ref - Ric(omega_ref). Requires t*[omega_ref] + 2*pi*c1(K)
/// to be a Kahler class.
ContinuitySolution wu_yau_solve(const MetricField& omega_ref, const Ansatz& ansatz, double t,
                                const ContinuityConfig& cfg = {});

/// At t = n*mu + 2*n*eps with sup H(omega_ref) <= mu + eps, checks
/// tr_{omega(t)} omega_ref <= 1/eps and |omega_ref|^2_{omega(t)} <= n/eps^2.
CheckReport trace_estimate_check(const ContinuitySolution& sol, double mu, double eps,
                                 double measured_sup_h);

/// Twisted-Einstein family member at t = n*mu + 2*n*eps with its certificate.
struct FamilyCertificate {
  bool applicable = false;
  std::string reason;
  double t = 0.0;
  double mu = 0.0;
  double eps = 0.0;
  bool class_ok = false;
  double equation_residual = 0.0;
  double curvature_integral = 0.0;  // int |Ric(w)+w|^2 w^n
  double proof_bound = 0.0;         // n (t/eps)^2 int w^n
  bool bound_ok = false;
  std::optional<ContinuitySolution> solution;
  CheckReport report;
};

/// Construct omega_tilde solving Ric(w) + w = t*omega_ref at t = n*mu+2*n*eps
/// and certify the class identity and the curvature-energy bound. Returns an
/// inapplicable certificate (never throws) when sup H exceeds mu + eps or the
/// target class is not Kahler.
FamilyCertificate my_family_construct(const MetricField& omega_ref, const Ansatz& ansatz,
                                      double mu, double eps, double measured_sup_h,
                                      const ContinuityConfig& cfg = {});

}  // namespace klab
