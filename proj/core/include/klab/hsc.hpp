#pragma once

#include "klab/atlas.hpp"
#include "klab/curvature.hpp"

namespace klab {

struct HscSearchConfig {
  int restarts = 16;
  int max_iters = 80;
  double grad_tol = 1e-12;
  uint64_t seed = 20240811;
};

struct HscEstimate {
  double value = 0.0;
  Point arg_point;
  Eigen::VectorXcd arg_direction;  // g-unit direction attaining the max
  int points_sampled = 0;
  int restarts = 0;
};

// Maximum of the quartic curvature form over the g-unit sphere at one point.
// `warm` is an optional starting direction (not required to be normalized).
double max_hsc_at(const CurvatureData& curv, const HscSearchConfig& cfg, Rng& rng,
                  Eigen::VectorXcd* arg_out = nullptr, const Eigen::VectorXcd* warm = nullptr);

// Certified-monotone estimate of sup over the atlas of the pointwise maximum.
HscEstimate sup_hsc(const MetricField& metric, const QuadratureAtlas& atlas,
                    const HscSearchConfig& cfg = {});

}  // namespace klab
