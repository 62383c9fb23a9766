#include "klab/atlas.hpp"

#include <cmath>

namespace klab {

double QuadratureAtlas::integrate(const std::function<double(const Point&)>& f) const {
  KahanSum s;
  for (const auto& p : points) s.add(p.weight * f(p.z));
  return s.value();
}

QuadratureAtlas make_torus_atlas(const ManifoldSpec& spec, const TorusAtlasOptions& opts) {
  if (spec.kind != ModelKind::Torus) throw ValidationError("torus atlas needs a torus spec");
  const int n = spec.dim;
  std::vector<int> per = opts.per_axis;
  if (per.empty()) per.assign(2 * n, n == 1 ? 64 : 16);
  if (static_cast<int>(per.size()) != 2 * n)
    throw ValidationError("torus atlas needs one resolution per real axis");
  for (int r : per)
    if (r < 1) throw ValidationError("torus atlas resolution must be >= 1");

  QuadratureAtlas atlas;
  atlas.scheme = "torus-midpoint";
  atlas.resolution = per;

  std::vector<double> length(2 * n);
  for (int i = 0; i < n; ++i) {
    length[2 * i] = spec.periods[i][0];
    length[2 * i + 1] = spec.periods[i][1];
  }
  double cell_weight = 1.0;
  for (int a = 0; a < 2 * n; ++a) cell_weight *= length[a] / per[a];

  std::vector<int> idx(2 * n, 0);
  while (true) {
    Point z(n);
    for (int i = 0; i < n; ++i) {
      double x = (idx[2 * i] + 0.5) * length[2 * i] / per[2 * i];
      double y = (idx[2 * i + 1] + 0.5) * length[2 * i + 1] / per[2 * i + 1];
      z[i] = {x, y};
    }
    atlas.points.push_back({std::move(z), cell_weight});
    int a = 2 * n - 1;
    while (a >= 0 && ++idx[a] == per[a]) idx[a--] = 0;
    if (a < 0) break;
  }
  return atlas;
}

QuadratureAtlas make_projective_atlas(const ManifoldSpec& spec, const ProjectiveAtlasOptions& opts) {
  if (spec.kind != ModelKind::Projective) throw ValidationError("projective atlas needs a projective spec");
  const int n = spec.dim;
  if (opts.radial < 1 || opts.sphere < 1 || opts.angular < 1)
    throw ValidationError("projective atlas resolutions must be >= 1");

  QuadratureAtlas atlas;
  atlas.scheme = "projective-polar";
  atlas.resolution = {opts.radial, opts.sphere, opts.angular};

  // Affine chart in polar form: z = R * zeta with R^2 = U/(1-U) and zeta on
  // the unit sphere parametrized by stick-breaking moduli and phases. The
  // real volume element becomes
  //   dVol = (1/2) U^{n-1} (1-U)^{-(n+1)} dU * dsigma(zeta),
  //   dsigma = 2^{-(n-1)} dm_1..dm_{n-1} dpsi_1..dpsi_n,
  // so decay in |z| is absorbed into the weights and the Fubini-Study
  // volume integrates exactly at any resolution.
  const int NU = opts.radial;
  const int NS = (n >= 2) ? opts.sphere : 1;
  const int NP = opts.angular;

  std::vector<int> dims;
  dims.push_back(NU);
  for (int j = 0; j < n - 1; ++j) dims.push_back(NS);
  // Overall phase is irrelevant for every integrand we evaluate, but points
  // are genuine chart points so all n phases are sampled.
  for (int j = 0; j < n; ++j) dims.push_back(NP);

  std::vector<int> idx(dims.size(), 0);
  const double du = 1.0 / NU;
  const double ds = 1.0 / NS;
  const double dpsi = kTwoPi / NP;

  while (true) {
    const double U = (idx[0] + 0.5) * du;
    double w = 0.5 * std::pow(U, n - 1) / std::pow(1.0 - U, n + 1) * du;
    w /= std::pow(2.0, n - 1);

    // Stick-breaking moduli: m_1 = s_1, m_2 = (1-s_1) s_2, ...
    std::vector<double> m(n, 1.0);
    double rest = 1.0;
    for (int j = 0; j < n - 1; ++j) {
      double s = (idx[1 + j] + 0.5) * ds;
      m[j] = rest * s;
      rest *= (1.0 - s);
      // Jacobian of stick-breaking onto flat simplex measure.
      w *= std::pow(1.0 - s, n - 2 - j) * ds;
    }
    m[n - 1] = rest;

    const double R = std::sqrt(U / (1.0 - U));
    Point z(n);
    for (int j = 0; j < n; ++j) {
      double psi = (idx[1 + (n - 1) + j] + 0.5) * dpsi;
      double modulus = R * std::sqrt(m[j]);
      z[j] = {modulus * std::cos(psi), modulus * std::sin(psi)};
      w *= dpsi;
    }
    atlas.points.push_back({std::move(z), w});

    int a = static_cast<int>(dims.size()) - 1;
    while (a >= 0 && ++idx[a] == dims[a]) idx[a--] = 0;
    if (a < 0) break;
  }
  return atlas;
}

QuadratureAtlas make_product_atlas(const std::vector<QuadratureAtlas>& factors) {
  if (factors.empty()) throw ValidationError("product atlas needs factors");
  QuadratureAtlas atlas;
  atlas.scheme = "product";
  for (const auto& f : factors)
    atlas.resolution.insert(atlas.resolution.end(), f.resolution.begin(), f.resolution.end());

  std::vector<size_t> idx(factors.size(), 0);
  while (true) {
    Point z;
    double w = 1.0;
    for (size_t f = 0; f < factors.size(); ++f) {
      const AtlasPoint& p = factors[f].points[idx[f]];
      z.insert(z.end(), p.z.begin(), p.z.end());
      w *= p.weight;
    }
    atlas.points.push_back({std::move(z), w});
    int a = static_cast<int>(factors.size()) - 1;
    while (a >= 0 && ++idx[a] == factors[a].points.size()) idx[a--] = 0;
    if (a < 0) break;
  }
  return atlas;
}

QuadratureAtlas make_default_atlas(const ManifoldSpec& spec, int resolution) {
  switch (spec.kind) {
    case ModelKind::Torus: {
      TorusAtlasOptions o;
      int r = resolution > 0 ? resolution : (spec.dim == 1 ? 64 : 16);
      o.per_axis.assign(2 * spec.dim, r);
      return make_torus_atlas(spec, o);
    }
    case ModelKind::Projective: {
      ProjectiveAtlasOptions o;
      if (resolution > 0) {
        o.radial = resolution;
        o.sphere = resolution;
        o.angular = std::max(8, resolution / 4);
      }
      if (spec.dim == 1) o.angular = resolution > 0 ? resolution : 64;
      return make_projective_atlas(spec, o);
    }
    case ModelKind::Product: {
      std::vector<QuadratureAtlas> parts;
      for (const auto& f : spec.factors) parts.push_back(make_default_atlas(f, resolution));
      return make_product_atlas(parts);
    }
    case ModelKind::CurveData:
      throw ValidationError("curve class data has no quadrature atlas");
  }
  throw ValidationError("unknown manifold kind");
}

}  // namespace klab
