#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "klab/chern_weil.hpp"
#include "klab/manifold.hpp"
#include "klab/util.hpp"

using namespace klab;

namespace {

const std::vector<double> kSchedule{1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125};

KahlerClassVector ones(int m) {
  KahlerClassVector v = KahlerClassVector::zero(m);
  for (int i = 0; i < m; ++i) v[i] = 1.0;
  return v;
}

// independent binomial-expansion limit: the eps -> 0 coefficient picks the
// term with nu canonical slots out of n-2
double limit_formula(const ManifoldSpec& spec, const KahlerClassVector& alpha, int nu,
                     double a_scale) {
  const int slots = spec.dim - 2;
  double c = binomial(slots, nu);
  for (int i = 0; i < nu; ++i) c *= kTwoPi;
  for (int i = 0; i < slots - nu; ++i) c *= a_scale;
  return c * my_defect_weighted(spec, chern_class_data(spec), nu, alpha);
}

bool has_note(const CheckReport& rep, const std::string& needle) {
  for (const std::string& note : rep.notes)
    if (note.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("flat classes collapse the expansion exactly") {
  for (int n : {3, 4}) {
    ManifoldSpec torus = make_torus(n);
    for (int nu = 0; nu <= n - 2; ++nu) {
      CheckReport rep = asymptotic_expansion_check(torus, ones(n), nu, kSchedule);
      CHECK(rep.pass);
      CHECK(rep.values.at("brute_minus_closed") == 0.0);
      CHECK(rep.values.at("limit") == 0.0);
      CHECK(rep.values.at("weighted_defect") == 0.0);
      CHECK(rep.values.at("value_last") == 0.0);
      CHECK(has_note(rep, "identically zero"));
      if (nu == 0) {
        // beta = 2n eps alpha exactly, so the volume side is the eps^2
        // coefficient on the nose at every schedule point
        CHECK(has_note(rep, "volume-side"));
        CHECK(rep.values.at("volume_dev_last") == 0.0);
      }
    }
  }
}

TEST_CASE("curve times torus passes at the canonical weight") {
  ManifoldSpec spec = make_product({make_curve_data(2), make_torus(2)});
  KahlerClassVector alpha = ones(3);
  const KahlerClassVector kappa = spec.canonical_class();

  CheckReport rep = asymptotic_expansion_check(spec, alpha, 1, kSchedule);
  CHECK(rep.pass);
  CHECK(rep.values.at("brute_minus_closed") == 0.0);
  // the defect matrix touches the curve generator twice, which dies in the
  // intersection ring, so every defect-side value vanishes identically
  CHECK(rep.values.at("limit") == 0.0);
  CHECK(rep.values.at("value_last") == 0.0);
  const double expected_vol = 4.0 * 27.0 * binomial(3, 1) * kTwoPi * 36.0 *
                              class_pairing(spec, {kappa, alpha, alpha});
  CHECK(rep.values.at("volume_coeff") ==
        doctest::Approx(expected_vol).epsilon(1e-12));
  CHECK(rep.values.at("volume_coeff") != 0.0);

  // declaring a weight below the numerical dimension of the canonical class
  // leaves a diverging kappa term in the volume expansion
  CheckReport low = asymptotic_expansion_check(spec, alpha, 0, kSchedule);
  CHECK(!low.pass);
  CHECK(low.values.at("brute_minus_closed") == 0.0);

  // a higher declared weight only zeroes more coefficients
  ManifoldSpec spec4 = make_product({make_curve_data(2), make_torus(3)});
  CheckReport high = asymptotic_expansion_check(spec4, ones(4), 2, kSchedule);
  CHECK(high.pass);
  CHECK(high.values.at("brute_minus_closed") == 0.0);
}

TEST_CASE("general type products converge on the defect side only") {
  ManifoldSpec g23 =
      make_product({make_curve_data(2), make_curve_data(2), make_curve_data(2)});
  KahlerClassVector alpha = ones(3);
  CheckReport rep = asymptotic_expansion_check(g23, alpha, 1, kSchedule);
  // kappa^2 pairings survive, so the volume side cannot settle to eps^2
  CHECK(!rep.pass);
  CHECK(rep.values.at("brute_minus_closed") == 0.0);
  CHECK(rep.values.at("limit") == doctest::Approx(kTwoPi * 16.0).epsilon(1e-12));
  CHECK(rep.values.at("limit") ==
        doctest::Approx(limit_formula(g23, alpha, 1, 6.0)).epsilon(1e-13));
  // with all n-2 slots canonical the variants share one limit
  CHECK(rep.values.at("limit_mu_variant") == rep.values.at("limit"));
  CHECK(rep.values.at("limit_flow_variant") == rep.values.at("limit"));
  CHECK(rep.values.at("dev_last") < rep.values.at("dev_first"));
  CHECK(rep.values.at("rate") >= 0.8);

  ManifoldSpec cp3 = make_projective(3);
  KahlerClassVector h = KahlerClassVector::zero(1);
  h[0] = 1.0;
  CheckReport fano = asymptotic_expansion_check(cp3, h, 1, kSchedule);
  CHECK(!fano.pass);
  CHECK(fano.values.at("brute_minus_closed") == 0.0);
}

TEST_CASE("expansion validation ladder") {
  ManifoldSpec t3 = make_torus(3);
  KahlerClassVector a3 = ones(3);
  CHECK_THROWS_AS(asymptotic_expansion_check(make_torus(2), ones(2), 0, kSchedule),
                  ValidationError);
  CHECK_THROWS_AS(asymptotic_expansion_check(t3, a3, -1, kSchedule), ValidationError);
  CHECK_THROWS_AS(asymptotic_expansion_check(t3, a3, 2, kSchedule), ValidationError);
  CHECK_THROWS_AS(asymptotic_expansion_check(t3, a3, 0, {1.0}), ValidationError);
  CHECK_THROWS_AS(asymptotic_expansion_check(t3, a3, 0, {1.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(asymptotic_expansion_check(t3, a3, 0, {0.5, 1.0}), ValidationError);
  CHECK_THROWS_AS(asymptotic_expansion_check(t3, a3, 0, {1.0, -0.5}), ValidationError);
  KahlerClassVector bad = ones(3);
  bad[1] = -1.0;
  CHECK_THROWS_AS(asymptotic_expansion_check(t3, bad, 0, kSchedule), ValidationError);
}
