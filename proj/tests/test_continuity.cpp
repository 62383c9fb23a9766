#include <doctest.h>

#include <cmath>

#include "klab/continuity.hpp"
#include "klab/metric.hpp"
#include "klab/util.hpp"

using namespace klab;

TEST_CASE("projective line continuity solutions are scaled round metrics") {
  // With omega_ref = FS (area 2 pi): Ric(ref) = 2 ref, so
  // omega(t) = (t - 2) omega_ref and u = log(t - 2).
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  Ansatz ansatz = Ansatz::radial(cp1, 256);
  for (double t : {2.5, 3.0, 5.0}) {
    ContinuitySolution sol = wu_yau_solve(*fs, ansatz, t);
    CHECK(sol.converged);
    CHECK(sol.equation_residual < 1e-6);
    double worst = 0.0;
    for (int i = 0; i < ansatz.nodes(); ++i) {
      worst = std::max(worst, std::abs(sol.g_act(i) - (t - 2.0) * sol.ref_g_act(i)) /
                                  ((t - 2.0) * sol.ref_g_act(i)));
    }
    CHECK(worst < 1e-6);
    CHECK((sol.u.array() - std::log(t - 2.0)).abs().maxCoeff() < 1e-6);
    REQUIRE(sol.solution_class.size() == 1);
    CHECK(sol.solution_class[0] == doctest::Approx((t - 2.0) * kTwoPi).epsilon(1e-12));
    CHECK(sol.trace_max == doctest::Approx(1.0 / (t - 2.0)).epsilon(1e-6));
  }
}

TEST_CASE("flat torus continuity solutions scale the reference") {
  // Ric(ref) = 0: omega(t) = t omega_ref and u = n log t.
  ManifoldSpec t1 = make_torus(1);
  MetricPtr flat = make_flat_torus_metric(t1, {1.0});
  Ansatz ansatz = Ansatz::torus_line(t1, 96);
  for (double t : {0.5, 1.0, 3.0}) {
    ContinuitySolution sol = wu_yau_solve(*flat, ansatz, t);
    CHECK(sol.converged);
    CHECK((sol.g_act.array() - t).abs().maxCoeff() < 1e-10);
    CHECK((sol.u.array() - std::log(t)).abs().maxCoeff() < 1e-10);
    CHECK(sol.trace_max == doctest::Approx(1.0 / t).epsilon(1e-10));
  }

  FourierMode mode;
  mode.amplitude = 0.01;
  mode.wave = {1, 0};
  MetricPtr pert = make_fourier_torus_metric(t1, {1.0}, {mode});
  ContinuitySolution sol = wu_yau_solve(*pert, ansatz, 2.0);
  CHECK(sol.converged);
  CHECK(sol.equation_residual < 1e-6);
  CHECK(sol.solution_class[0] == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("continuity rejects non-Kahler targets") {
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  Ansatz ansatz = Ansatz::radial(cp1, 64);
  // t [ref] + 2 pi c1(K) = 2 pi (t - 2) h needs t > 2
  CHECK_THROWS_AS(wu_yau_solve(*fs, ansatz, 1.9), ValidationError);
  CHECK_THROWS_AS(wu_yau_solve(*fs, ansatz, -1.0), ValidationError);
}

TEST_CASE("trace estimate at the twisted-einstein parameter") {
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  Ansatz ansatz = Ansatz::radial(cp1, 256);
  const double mu = 2.0;
  for (double eps : {0.1, 0.01}) {
    const double t = 1.0 * mu + 2.0 * eps;  // n = 1
    ContinuitySolution sol = wu_yau_solve(*fs, ansatz, t);
    CheckReport rep = trace_estimate_check(sol, mu, eps, 2.0);
    CHECK(rep.pass);
    CHECK(rep.values.at("trace_max") == doctest::Approx(1.0 / (2.0 * eps)).epsilon(1e-5));
    CHECK(rep.bounds.at("trace_max") == doctest::Approx(1.0 / eps));
  }

  ContinuitySolution sol = wu_yau_solve(*fs, ansatz, 2.2);
  CHECK_THROWS_AS(trace_estimate_check(sol, 2.0, 0.2, 2.0), ValidationError);
  CHECK_THROWS_AS(trace_estimate_check(sol, 2.0, 0.1, 2.5), ValidationError);
}

TEST_CASE("family certificate on the projective line") {
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  Ansatz ansatz = Ansatz::radial(cp1, 192);
  FamilyCertificate cert = my_family_construct(*fs, ansatz, 2.0, 0.1, 2.0);
  CHECK(cert.applicable);
  CHECK(cert.class_ok);
  CHECK(cert.bound_ok);
  CHECK(cert.report.pass);
  CHECK(cert.t == doctest::Approx(2.2));
  // with w = (t-2) ref: Ric(w) + w = t ref, |t ref|^2_w = (t/(t-2))^2,
  // so the energy is (t/(t-2))^2 vol against the bound n (t/eps)^2 vol.
  const double t = 2.2;
  const double vol = (t - 2.0) * kTwoPi;
  const double expected = std::pow(t / (t - 2.0), 2.0) * vol;
  CHECK(cert.curvature_integral == doctest::Approx(expected).epsilon(1e-6));
  CHECK(cert.proof_bound == doctest::Approx(1.0 * 22.0 * 22.0 * vol).epsilon(1e-9));

  // measured sup H above mu + eps is not an error: the gate reports itself
  FamilyCertificate off = my_family_construct(*fs, ansatz, 2.0, 0.1, 2.5);
  CHECK(!off.applicable);
  CHECK(!off.reason.empty());
  CHECK(!off.report.pass);
}

TEST_CASE("family certificate on a flat class") {
  ManifoldSpec t1 = make_torus(1);
  MetricPtr flat = make_flat_torus_metric(t1, {1.0});
  Ansatz ansatz = Ansatz::torus_line(t1, 96);
  FamilyCertificate cert = my_family_construct(*flat, ansatz, 0.0, 0.05, 0.0);
  CHECK(cert.applicable);
  CHECK(cert.report.pass);
  CHECK(cert.t == doctest::Approx(0.1));
}

TEST_CASE("newton residual history is monotone near the solution") {
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  Ansatz ansatz = Ansatz::radial(cp1, 128);
  ContinuitySolution sol = wu_yau_solve(*fs, ansatz, 5.0);
  REQUIRE(sol.residual_history.size() >= 2);
  CHECK(sol.residual_history.back() < sol.residual_history.front());
  CHECK(sol.newton_residual == doctest::Approx(sol.residual_history.back()));
}
