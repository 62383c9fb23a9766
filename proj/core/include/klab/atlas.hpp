#pragma once

#include <functional>
#include <string>
#include <vector>

#include "klab/manifold.hpp"
#include "klab/util.hpp"

namespace klab {

struct AtlasPoint {
  Point z;        // chart coordinates
  double weight;  // quadrature weight against the real coordinate volume
};

/// Deterministic quadrature point set for one model manifold.
///
/// Torus: midpoint grid on the fundamental cell (trig polynomials integrate
/// exactly once the grid resolves their band). Projective space: polar
/// points on the affine chart with decay-compensated weights chosen so the
/// Fubini-Study volume integrates exactly. Products: tensor product of the
/// factor atlases.
struct QuadratureAtlas {
  std::vector<AtlasPoint> points;
  std::string scheme;
  std::vector<int> resolution;

  size_t size() const { return points.size(); }

  /// Integral of f against the real coordinate volume, compensated sum.
  double integrate(const std::function<double(const Point&)>& f) const;
};

struct TorusAtlasOptions {
  // Points per real axis (x1, y1, x2, y2, ...). Axes an integrand does not
  // depend on may be set to 1.
  std::vector<int> per_axis;
};

struct ProjectiveAtlasOptions {
  int radial = 64;  // points in the compactified radius u = r^2/(1+r^2)
  int sphere = 64;  // points per simplex coordinate of the chart sphere
  int angular = 16; // points per phase
};

QuadratureAtlas make_torus_atlas(const ManifoldSpec& spec, const TorusAtlasOptions& opts);
QuadratureAtlas make_projective_atlas(const ManifoldSpec& spec, const ProjectiveAtlasOptions& opts);
QuadratureAtlas make_product_atlas(const std::vector<QuadratureAtlas>& factors);

/// Default atlas for any metric-capable model at a given budget knob.
QuadratureAtlas make_default_atlas(const ManifoldSpec& spec, int resolution = 0);

}  // namespace klab
