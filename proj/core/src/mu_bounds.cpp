#include "klab/mu_bounds.hpp"

#include <algorithm>
#include <cmath>

namespace klab {

double mu_lower_bound(const ManifoldSpec& spec, const KahlerClassVector& alpha) {
  if (!in_kahler_cone(spec, alpha)) throw ValidationError("class is not Kahler");
  const int n = spec.dim;
  std::vector<KahlerClassVector> numer{spec.c1};
  for (int k = 0; k < n - 1; ++k) numer.push_back(alpha);
  std::vector<KahlerClassVector> denom(n, alpha);
  const double num = class_pairing(spec, numer);
  const double den = class_pairing(spec, denom);
  const double Cn = 2.0 * factorial(n - 1) / ((n + 1) * std::pow(kPi, n - 1));
  return Cn * ((kTwoPi * num) / den);
}

MetricPtr mu_family_member(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                           const MuSearchConfig& cfg, const std::vector<double>& params) {
  if (cfg.family == MetricFamily::TorusFourier) {
    if (spec.kind != ModelKind::Torus) throw ValidationError("fourier family needs a torus");
    std::vector<FourierMode> modes;
    for (size_t k = 0; k < params.size(); ++k) {
      FourierMode m;
      m.wave.assign(2 * spec.dim, 0);
      m.wave[k % (2 * spec.dim)] = 1 + static_cast<int>(k / (2 * spec.dim));
      m.amplitude = params[k];
      m.phase = 0.3 * static_cast<double>(k);
      modes.push_back(std::move(m));
    }
    return make_fourier_torus_metric(spec, alpha.coeffs, std::move(modes));
  }
  if (spec.kind != ModelKind::Projective || spec.dim != 1)
    throw ValidationError("radial family needs projective(1)");
  const double scale = alpha.coeffs[0] / kTwoPi;
  static const double centers[] = {-1.2, 0.9, 0.1};
  static const double widths[] = {1.0, 0.7, 1.4};
  std::vector<RadialBump> bumps;
  for (size_t k = 0; k < params.size() && k < 3; ++k)
    bumps.push_back({params[k], centers[k], widths[k]});
  return make_radial_metric(spec, scale, std::move(bumps));
}

namespace {

struct NelderMead {
  int dim;
  int max_evals;
  double diam_tol = 1e-9;

  template <typename F>
  std::pair<std::vector<double>, double> minimize(F&& f, std::vector<double> x0, double scale,
                                                  int& evals, bool& converged) {
    const int d = dim;
    std::vector<std::vector<double>> xs(d + 1, x0);
    std::vector<double> fs(d + 1);
    for (int i = 1; i <= d; ++i) xs[i][i - 1] += scale;
    for (int i = 0; i <= d; ++i) {
      fs[i] = f(xs[i]);
      ++evals;
    }
    auto order = [&] {
      std::vector<int> idx(d + 1);
      for (int i = 0; i <= d; ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fs[a] < fs[b]; });
      std::vector<std::vector<double>> xs2;
      std::vector<double> fs2;
      for (int i : idx) {
        xs2.push_back(xs[i]);
        fs2.push_back(fs[i]);
      }
      xs = std::move(xs2);
      fs = std::move(fs2);
    };
    converged = false;
    while (evals < max_evals) {
      order();
      double diam = 0.0;
      for (int i = 1; i <= d; ++i)
        for (int j = 0; j < d; ++j) diam = std::max(diam, std::abs(xs[i][j] - xs[0][j]));
      if (diam < diam_tol) {
        converged = true;
        break;
      }
      std::vector<double> centroid(d, 0.0);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) centroid[j] += xs[i][j] / d;
      auto blend = [&](double t) {
        std::vector<double> p(d);
        for (int j = 0; j < d; ++j) p[j] = centroid[j] + t * (xs[d][j] - centroid[j]);
        return p;
      };
      std::vector<double> xr = blend(-1.0);
      double fr = f(xr);
      ++evals;
      if (fr < fs[0]) {
        std::vector<double> xe = blend(-2.0);
        double fe = f(xe);
        ++evals;
        if (fe < fr) {
          xs[d] = xe;
          fs[d] = fe;
        } else {
          xs[d] = xr;
          fs[d] = fr;
        }
      } else if (fr < fs[d - 1]) {
        xs[d] = xr;
        fs[d] = fr;
      } else {
        std::vector<double> xc = blend(fr < fs[d] ? -0.5 : 0.5);
        double fc = f(xc);
        ++evals;
        if (fc < std::min(fr, fs[d])) {
          xs[d] = xc;
          fs[d] = fc;
        } else {
          for (int i = 1; i <= d; ++i) {
            for (int j = 0; j < d; ++j) xs[i][j] = xs[0][j] + 0.5 * (xs[i][j] - xs[0][j]);
            fs[i] = f(xs[i]);
            ++evals;
            if (evals >= max_evals) break;
          }
        }
      }
    }
    order();
    return {xs[0], fs[0]};
  }
};

}  // namespace

MuSearchResult mu_upper_search(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                               const MuSearchConfig& cfg) {
  if (!in_kahler_cone(spec, alpha)) throw ValidationError("class is not Kahler");
  const QuadratureAtlas atlas = make_default_atlas(spec, cfg.atlas_resolution);
  auto objective = [&](const std::vector<double>& p) -> double {
    try {
      MetricPtr m = mu_family_member(spec, alpha, cfg, p);
      return sup_hsc(*m, atlas, cfg.hsc).value;
    } catch (const NumericalError&) {
      return 1e9;  // outside the positive cone of the family
    }
  };

  Rng rng(cfg.seed);
  MuSearchResult result;
  result.best_value = std::numeric_limits<double>::infinity();
  const int per_restart = std::max(cfg.max_evals / std::max(cfg.restarts, 1), cfg.parameters + 2);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::vector<double> x0(cfg.parameters, 0.0);
    if (r > 0)
      for (auto& x : x0) x = uniform(rng, -cfg.simplex_scale, cfg.simplex_scale);
    NelderMead nm{cfg.parameters, result.evals + per_restart};
    bool conv = false;
    auto [xbest, fbest] = nm.minimize(objective, x0, cfg.simplex_scale, result.evals, conv);
    if (fbest < result.best_value) {
      result.best_value = fbest;
      result.witness = xbest;
      result.converged = conv;
    }
  }
  return result;
}

CheckReport mu_sandwich_check(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                              const MuSearchConfig& cfg, double tolerance) {
  CheckReport rep("mu-sandwich", "lower bound <= mu <= family upper bound");
  const double lower = mu_lower_bound(spec, alpha);
  const MuSearchResult upper = mu_upper_search(spec, alpha, cfg);
  rep.values["mu_lower_bound"] = lower;
  rep.values["mu_upper_bound"] = upper.best_value;
  rep.values["search_evals"] = upper.evals;
  rep.tolerance = tolerance;
  const double floor = std::max(lower, 0.0);
  bool ok = floor <= upper.best_value + tolerance;
  if (ok && upper.best_value - floor <= tolerance) {
    rep.values["mu_certified"] = floor;
    rep.note("bounds pinch: mu is certified within tolerance");
  }
  const double threshold = nef_threshold(spec, alpha);
  if (std::isfinite(threshold) && floor > 0.0) {
    rep.values["nef_threshold"] = threshold;
    rep.values["inverse_n_mu"] = 1.0 / (spec.dim * floor);
    ok = ok && std::abs(threshold - 1.0 / (spec.dim * floor)) <= tolerance;
  }
  rep.pass = ok;
  return rep;
}

}  // namespace klab
