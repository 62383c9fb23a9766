#include <doctest.h>

#include <cmath>

#include "klab/atlas.hpp"
#include "klab/hsc.hpp"
#include "klab/inequalities.hpp"
#include "klab/metric.hpp"
#include "klab/util.hpp"

using namespace klab;

namespace {

QuadratureAtlas small_cp_atlas(int n, int res) {
  return make_default_atlas(make_projective(n), res);
}

// g-orthonormal frame by Gram-Schmidt in the pairing <u, v> = u^T g conj(v),
// the convention the curvature quartic contracts with.
Eigen::MatrixXcd random_frame(Rng& rng, const Eigen::MatrixXcd& g, int k) {
  const int n = static_cast<int>(g.rows());
  Eigen::MatrixXcd frame(n, k);
  for (int a = 0; a < k; ++a) {
    Eigen::VectorXcd v(n);
    for (int i = 0; i < n; ++i) v(i) = uniform(rng, -1.0, 1.0) * unit_phase(rng);
    for (int b = 0; b < a; ++b) {
      cplx proj = (v.transpose() * g * frame.col(b).conjugate())(0, 0);
      v -= proj * frame.col(b);
    }
    double norm = std::sqrt((v.transpose() * g * v.conjugate())(0, 0).real());
    frame.col(a) = v / norm;
  }
  return frame;
}

}  // namespace

TEST_CASE("sup_hsc on constant-curvature models") {
  ManifoldSpec t2 = make_torus(2);
  TorusAtlasOptions to;
  to.per_axis = {6, 6, 6, 6};
  QuadratureAtlas tat = make_torus_atlas(t2, to);
  HscSearchConfig cfg;
  cfg.restarts = 4;
  HscEstimate flat = sup_hsc(*make_flat_torus_metric(t2), tat, cfg);
  CHECK(std::abs(flat.value) < 1e-14);

  ManifoldSpec cp1 = make_projective(1);
  HscEstimate e1 = sup_hsc(*make_fubini_study_metric(cp1), small_cp_atlas(1, 24), cfg);
  CHECK(e1.value == doctest::Approx(2.0).epsilon(1e-10));

  ManifoldSpec cp2 = make_projective(2);
  HscEstimate e2 = sup_hsc(*make_fubini_study_metric(cp2, 2.0), small_cp_atlas(2, 10), cfg);
  CHECK(e2.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(e2.points_sampled > 0);
}

TEST_CASE("sup_hsc against a dense radial scan") {
  ManifoldSpec cp1 = make_projective(1);
  RadialBump bump;
  bump.amplitude = 0.12;
  bump.center = 0.2;
  bump.width = 0.7;
  MetricPtr m = make_radial_metric(cp1, 1.0, {bump});
  const RadialProfile* prof = radial_profile_of(*m);
  REQUIRE(prof != nullptr);
  double dense = -1e300;
  for (int i = 0; i <= 20000; ++i) {
    double s = -14.0 + 28.0 * i / 20000.0;
    dense = std::max(dense, prof->ricci(s) / prof->m(s));
  }
  HscSearchConfig cfg;
  cfg.restarts = 2;
  HscEstimate est = sup_hsc(*m, small_cp_atlas(1, 96), cfg);
  CHECK(est.value == doctest::Approx(dense).epsilon(1e-4));
}

TEST_CASE("max_hsc_at attains the constant on fubini-study") {
  ManifoldSpec cp2 = make_projective(2);
  CurvatureData curv = curvature_at(*make_fubini_study_metric(cp2), {cplx(0.2, 0.4), cplx(-0.3, 0.1)});
  HscSearchConfig cfg;
  cfg.restarts = 3;
  Rng rng(5);
  Eigen::VectorXcd arg;
  double v = max_hsc_at(curv, cfg, rng, &arg);
  CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(curv.hsc(arg) == doctest::Approx(v).epsilon(1e-12));
}

TEST_CASE("royden quadratic slack saturates on the projective line") {
  ManifoldSpec cp1 = make_projective(1);
  CurvatureData curv = curvature_at(*make_fubini_study_metric(cp1), {cplx(0.5, -0.2)});
  double slack = royden_quadratic_slack(curv, curv.g, 2.0);
  CHECK(std::abs(slack) < 1e-12);

  ManifoldSpec cp2 = make_projective(2);
  CurvatureData c2 = curvature_at(*make_fubini_study_metric(cp2), {cplx(0.1, 0.3), cplx(0.2, 0.0)});
  // A n^2 - (n^2 + n)/c with A = 2, c = 1
  CHECK(royden_quadratic_slack(c2, c2.g, 2.0) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("royden refined slack vanishes on fubini-study frames") {
  ManifoldSpec cp3 = make_projective(3);
  CurvatureData curv = curvature_at(*make_fubini_study_metric(cp3),
                                    {cplx(0.2, 0.1), cplx(-0.4, 0.3), cplx(0.1, -0.5)});
  Rng rng(11);
  for (int k = 1; k <= 3; ++k) {
    Eigen::MatrixXcd frame = random_frame(rng, curv.g, k);
    CHECK(std::abs(royden_refined_slack(curv, frame, 2.0)) < 1e-10);
  }
}

TEST_CASE("royden property suite over random draws") {
  ManifoldSpec t2 = make_torus(2);
  TorusAtlasOptions to;
  to.per_axis = {5, 5, 5, 5};
  QuadratureAtlas tat = make_torus_atlas(t2, to);
  Rng rng(99);
  HscSearchConfig cfg;
  cfg.restarts = 6;
  for (int trial = 0; trial < 3; ++trial) {
    MetricPtr m = random_fourier_torus_metric(t2, rng, 2, 0.04);
    double sup = sup_hsc(*m, tat, cfg).value;
    double A = sup + 1e-6;
    for (int draw = 0; draw < 60; ++draw) {
      Point z = {cplx(uniform(rng, 0, 1), uniform(rng, 0, 1)),
                 cplx(uniform(rng, 0, 1), uniform(rng, 0, 1))};
      CurvatureData curv = curvature_at(*m, z);
      CHECK(royden_quadratic_slack(curv, curv.g, A) >= -1e-8);
      int k = 1 + static_cast<int>(draw % 2);
      Eigen::MatrixXcd frame = random_frame(rng, curv.g, k);
      CHECK(royden_refined_slack(curv, frame, A) >= -1e-8);
    }
  }
}

TEST_CASE("royden bound check accepts valid A and flags invalid A") {
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  QuadratureAtlas atlas = small_cp_atlas(1, 24);
  HscSearchConfig cfg;
  cfg.restarts = 2;
  CheckReport ok = royden_bound_check(*fs, *fs, 2.0 + 1e-6, atlas, cfg);
  CHECK(ok.pass);
  CheckReport bad = royden_bound_check(*fs, *fs, 1.8, atlas, cfg);
  CHECK(!bad.pass);
}

TEST_CASE("royden refined check wrapper validates frames") {
  ManifoldSpec cp2 = make_projective(2);
  MetricPtr fs = make_fubini_study_metric(cp2);
  Point z = {cplx(0.1, 0.2), cplx(0.3, -0.1)};
  CurvatureData curv = curvature_at(*fs, z);
  Rng rng(3);
  Eigen::MatrixXcd frame = random_frame(rng, curv.g, 2);
  CheckReport rep = royden_refined_check(*fs, curv.g, frame, z, 2.0 + 1e-9);
  CHECK(rep.pass);
  // non-orthonormal frame is rejected as input, not reported as a failure
  Eigen::MatrixXcd bad = 2.0 * frame;
  CHECK_THROWS_AS(royden_refined_check(*fs, curv.g, bad, z, 2.0), ValidationError);
}

TEST_CASE("berger direction average") {
  ManifoldSpec cp2 = make_projective(2);
  MetricPtr fs = make_fubini_study_metric(cp2);
  CheckReport rep = berger_identity_check(*fs, {cplx(0.3, 0.1), cplx(-0.2, 0.4)}, 48, 48);
  CHECK(rep.pass);
  CHECK(rep.values.at("lhs_direction_average") == doctest::Approx(2.0).epsilon(1e-3));
  CHECK(rep.values.at("rhs_scalar_side") == doctest::Approx(2.0).epsilon(1e-12));

  ManifoldSpec t2 = make_torus(2);
  Rng rng(21);
  for (int i = 0; i < 2; ++i) {
    MetricPtr m = random_fourier_torus_metric(t2, rng, 2, 0.05);
    Point z = {cplx(uniform(rng, 0, 1), uniform(rng, 0, 1)),
               cplx(uniform(rng, 0, 1), uniform(rng, 0, 1))};
    CheckReport r = berger_identity_check(*m, z, 48, 48);
    CHECK(r.pass);
  }

  ManifoldSpec cp1 = make_projective(1);
  CHECK_THROWS_AS(berger_identity_check(*make_fubini_study_metric(cp1), {cplx(0.0, 0.0)}, 8, 8),
                  ValidationError);
}

TEST_CASE("direction grid weights form a probability measure") {
  for (int n : {2, 3}) {
    auto grid = direction_grid(n, 24, 24);
    double total = 0.0;
    for (const auto& d : grid) {
      total += d.weight;
      CHECK(std::abs(d.v.squaredNorm() - 1.0) < 1e-12);
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("product sup bound and rational curve bound") {
  ManifoldSpec cp1 = make_projective(1);
  ManifoldSpec pp = make_product({cp1, cp1});
  CheckReport prod = product_hsc_check(pp, {make_fubini_study_metric(cp1),
                                            make_fubini_study_metric(cp1, 2.0)},
                                       2.0, 1.0, 16);
  CHECK(prod.pass);
  CHECK(prod.values.at("sup_H_product") <= 3.0 + 1e-6);

  ManifoldSpec cp2 = make_projective(2);
  CheckReport rat = rational_curve_bound_check(cp2, *make_fubini_study_metric(cp2),
                                               small_cp_atlas(2, 10));
  CHECK(rat.pass);
  CHECK(rat.bounds.at("lower_bound") == doctest::Approx(kPi / (32.0 * kTwoPi)).epsilon(1e-6));
}
