#include <doctest.h>

#include <cmath>

#include "klab/manifold.hpp"
#include "klab/util.hpp"

using namespace klab;

namespace {

// Independent pairing: expand every class in the generator basis and sum
// against intersect_basis directly, without the library's loop structure.
double brute_pairing(const ManifoldSpec& spec, const std::vector<KahlerClassVector>& cls) {
  const int m = spec.basis_size();
  const int n = spec.dim;
  std::vector<int> idx(n, 0);
  double total = 0.0;
  while (true) {
    double coeff = 1.0;
    for (int k = 0; k < n; ++k) coeff *= cls[k][idx[k]];
    if (coeff != 0.0) total += coeff * spec.intersect_basis(idx);
    int k = n - 1;
    while (k >= 0 && ++idx[k] == m) idx[k--] = 0;
    if (k < 0) break;
  }
  return total;
}

}  // namespace

TEST_CASE("projective class arithmetic") {
  ManifoldSpec cp2 = make_projective(2);
  CHECK(cp2.basis_size() == 1);
  CHECK(cp2.c1[0] == doctest::Approx(3.0));
  CHECK(cp2.intersect_basis({0, 0}) == 1.0);
  CHECK(class_pairing(cp2, {cp2.c1, cp2.c1}) == doctest::Approx(9.0));

  ManifoldSpec cp3 = make_projective(3);
  CHECK(cp3.c1[0] == doctest::Approx(4.0));
  CHECK(class_pairing(cp3, {cp3.c1, cp3.c1, cp3.c1}) == doctest::Approx(64.0));

  KahlerClassVector fs({kTwoPi});
  CHECK(class_volume(make_projective(1), fs) == doctest::Approx(kTwoPi));
  CHECK(class_volume(cp2, fs) == doctest::Approx(4.0 * kPi * kPi));

  CHECK(in_kahler_cone(cp2, fs));
  CHECK(!in_kahler_cone(cp2, KahlerClassVector({-1.0})));
  CHECK(!in_nef_cone(cp2, cp2.canonical_class()));
  CHECK(cp2.canonical_class()[0] == doctest::Approx(-3.0));
}

TEST_CASE("torus class arithmetic") {
  ManifoldSpec t2 = make_torus(2);
  CHECK(t2.basis_size() == 2);
  CHECK(t2.c1.inf_norm() == 0.0);
  // distinct generators wedge to 2^n * cell volume, repeats vanish
  CHECK(t2.intersect_basis({0, 1}) == doctest::Approx(4.0));
  CHECK(t2.intersect_basis({0, 0}) == 0.0);

  KahlerClassVector a({2.0, 3.0});
  CHECK(class_volume(t2, a) == doctest::Approx(2.0 * 2.0 * 3.0 * 4.0));
  CHECK(class_volume(t2, a) == doctest::Approx(brute_pairing(t2, {a, a})));

  ManifoldSpec rect = make_torus(1, {{2.0, 0.5}});
  CHECK(class_volume(rect, KahlerClassVector({1.0})) == doctest::Approx(2.0));

  CHECK(in_nef_cone(t2, t2.canonical_class()));
  CHECK(numerical_kodaira_dimension(t2) == 0);
}

TEST_CASE("curve class data") {
  ManifoldSpec g2 = make_curve_data(2);
  CHECK(g2.c1[0] == doctest::Approx(-2.0));
  CHECK(!g2.has_metric_models());
  CHECK(in_nef_cone(g2, g2.canonical_class()));
  CHECK(numerical_kodaira_dimension(g2) == 1);

  ManifoldSpec g1 = make_curve_data(1);
  CHECK(g1.c1[0] == 0.0);
  CHECK(numerical_kodaira_dimension(g1) == 0);

  ManifoldSpec g0 = make_curve_data(0);
  CHECK(g0.c1[0] == doctest::Approx(2.0));
  CHECK_THROWS_AS(numerical_kodaira_dimension(g0), ValidationError);
  CHECK_THROWS_AS(make_curve_data(-1), ValidationError);
}

TEST_CASE("product class arithmetic") {
  ManifoldSpec p = make_product({make_curve_data(2), make_curve_data(2)});
  CHECK(p.dim == 2);
  CHECK(p.basis_size() == 2);
  CHECK(p.c1[0] == doctest::Approx(-2.0));
  CHECK(p.c1[1] == doctest::Approx(-2.0));
  CHECK(p.intersect_basis({0, 1}) == doctest::Approx(1.0));
  CHECK(p.intersect_basis({0, 0}) == 0.0);
  CHECK(class_pairing(p, {p.c1, p.c1}) == doctest::Approx(8.0));
  CHECK(in_nef_cone(p, p.canonical_class()));
  CHECK(numerical_kodaira_dimension(p) == 2);

  ManifoldSpec pp = make_product({make_projective(1), make_projective(1)});
  CHECK(class_pairing(pp, {pp.c1, pp.c1}) == doctest::Approx(8.0));
  KahlerClassVector ab({kTwoPi, kTwoPi});
  CHECK(class_volume(pp, ab) == doctest::Approx(8.0 * kPi * kPi));

  ManifoldSpec mix = make_product({make_torus(1), make_curve_data(2)});
  CHECK(mix.dim == 2);
  CHECK(!mix.has_metric_models());
  KahlerClassVector m({1.0, 1.0});
  CHECK(class_volume(mix, m) == doctest::Approx(brute_pairing(mix, {m, m})));
}

TEST_CASE("pairing validates arity") {
  ManifoldSpec cp2 = make_projective(2);
  CHECK_THROWS_AS(class_pairing(cp2, {cp2.c1}), ValidationError);
  CHECK_THROWS_AS(cp2.intersect_basis({0}), ValidationError);
}

TEST_CASE("flow classes and nef threshold") {
  ManifoldSpec cp1 = make_projective(1);
  KahlerClassVector alpha({kTwoPi});
  // alpha + 2 pi t c1(K) = 2 pi (1 - 2 t) h
  KahlerClassVector moved = flow_class(cp1, alpha, 0.2);
  CHECK(moved[0] == doctest::Approx(kTwoPi * 0.6));
  CHECK(nef_threshold(cp1, alpha) == doctest::Approx(0.5));

  ManifoldSpec t1 = make_torus(1);
  CHECK(flow_class(t1, KahlerClassVector({1.5}), 7.0)[0] == doctest::Approx(1.5));
  CHECK(nef_threshold(t1, KahlerClassVector({1.5})) == std::numeric_limits<double>::infinity());

  KahlerClassVector norm0 = normalized_flow_class(cp1, alpha, 0.0);
  CHECK(norm0[0] == doctest::Approx(kTwoPi));
  KahlerClassVector normT = normalized_flow_class(cp1, alpha, 30.0);
  CHECK(normT[0] == doctest::Approx(-kTwoPi * 2.0).epsilon(1e-9));

  ManifoldSpec g2 = make_curve_data(2);
  KahlerClassVector nlim = normalized_flow_class(g2, KahlerClassVector({5.0}), 40.0);
  CHECK(nlim[0] == doctest::Approx(2.0 * kTwoPi).epsilon(1e-9));
}

TEST_CASE("property A limit check") {
  ManifoldSpec t1 = make_torus(1);
  std::vector<std::pair<KahlerClassVector, double>> seq;
  for (int i = 1; i <= 32; ++i) seq.push_back({KahlerClassVector({1.0 / i}), 1e-4 / i});
  PropertyALimitReport rep = property_A_limit_check(t1, seq);
  CHECK(rep.pass);
  CHECK(rep.limit_distance_to_c1K == doctest::Approx(0.0).epsilon(1e-6));

  // Fano scaling: mu ~ 2/c against alpha = 2 pi c h keeps mu*alpha constant
  ManifoldSpec cp1 = make_projective(1);
  std::vector<std::pair<KahlerClassVector, double>> fano;
  for (int i = 1; i <= 8; ++i) fano.push_back({KahlerClassVector({kTwoPi * i}), 2.0 / i});
  CHECK(!property_A_limit_check(cp1, fano).pass);
}
