#pragma once

#include "klab/hsc.hpp"
#include "klab/manifold.hpp"
#include "klab/report.hpp"

namespace klab {

// C_n * 2 pi * (c1 . alpha^{n-1}) / alpha^n with C_n = 2 (n-1)! / ((n+1) pi^{n-1}).
// May be <= 0, in which case it is vacuous against mu >= 0.
double mu_lower_bound(const ManifoldSpec& spec, const KahlerClassVector& alpha);

enum class MetricFamily { TorusFourier, ProjectiveRadial };

struct MuSearchConfig {
  MetricFamily family = MetricFamily::TorusFourier;
  int parameters = 2;       // number of free amplitudes
  int max_evals = 240;
  int restarts = 3;
  double simplex_scale = 0.05;
  int atlas_resolution = 0;  // 0 = family default
  HscSearchConfig hsc;
  uint64_t seed = 7;
};

struct MuSearchResult {
  double best_value = 0.0;
  std::vector<double> witness;  // family parameters attaining best_value
  bool converged = false;
  int evals = 0;
};

// Derivative-free minimization of sup H over a class-preserving metric
// family; any output is an upper bound for mu of the class by definition.
MuSearchResult mu_upper_search(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                               const MuSearchConfig& cfg);

// Builds the family member for a parameter vector (exposed for tests).
MetricPtr mu_family_member(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                           const MuSearchConfig& cfg, const std::vector<double>& params);

// Combined certificate: lower bound, upper search, and the nef-threshold
// cross-check lambda = 1/(n mu) on models where mu > 0.
CheckReport mu_sandwich_check(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                              const MuSearchConfig& cfg, double tolerance = 1e-3);

}  // namespace klab
