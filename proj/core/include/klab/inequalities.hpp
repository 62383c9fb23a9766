#pragma once

#include "klab/hsc.hpp"
#include "klab/manifold.hpp"
#include "klab/report.hpp"

namespace klab {

// Pointwise slack of the quadratic-form curvature bound:
//   A (tr_ghat omega)^2 - ghat^{jbar i} ghat^{qbar p} R_{i jbar p qbar}.
double royden_quadratic_slack(const CurvatureData& curv, const Eigen::MatrixXcd& ghat, double A);

// Slack of the refined frame inequality:
//   A/2 ((sum |xi_a|^2)^2 + sum |xi_a|^4) - sum_{a,b} R(xi_a, conj, xi_b, conj).
// Frame columns are assumed ghat-orthonormal (validated by the check wrapper).
double royden_refined_slack(const CurvatureData& curv, const Eigen::MatrixXcd& frame, double A);

// min over atlas points of royden_quadratic_slack; fails when A is below the
// measured sup of H on the same atlas.
CheckReport royden_bound_check(const MetricField& omega, const MetricField& ghat, double A,
                               const QuadratureAtlas& atlas, const HscSearchConfig& cfg = {});

CheckReport royden_refined_check(const MetricField& omega, const Eigen::MatrixXcd& ghat_matrix,
                                 const Eigen::MatrixXcd& frame, const Point& z, double A);

// Direction average of H against the invariant direction measure vs
// 2 S / (n (n+1)); n >= 2.
CheckReport berger_identity_check(const MetricField& metric, const Point& z, int u_res,
                                  int phase_res);

// Builds the block product metric and verifies sup H <= A1 + A2.
CheckReport product_hsc_check(const ManifoldSpec& product_spec, std::vector<MetricPtr> factors,
                              double A1, double A2, int atlas_resolution = 0,
                              const HscSearchConfig& cfg = {});

// sup H >= pi / (32 area(C)) for an embedded coordinate projective line C.
CheckReport rational_curve_bound_check(const ManifoldSpec& spec, const MetricField& metric,
                                       const QuadratureAtlas& ambient_atlas,
                                       const HscSearchConfig& cfg = {});

// Direction grid on the unit sphere of C^n modulo phase, with probability
// weights; used by the direction average and exposed for tests.
struct DirectionSample {
  Eigen::VectorXcd v;
  double weight;
};
std::vector<DirectionSample> direction_grid(int n, int u_res, int phase_res);

}  // namespace klab
