// Microbenchmarks for the per-point kernels and the small end-to-end solves
// that dominate scenario runtimes.

#include <benchmark/benchmark.h>

#include "klab/ansatz.hpp"
#include "klab/atlas.hpp"
#include "klab/chern_weil.hpp"
#include "klab/continuity.hpp"
#include "klab/curvature.hpp"
#include "klab/flow.hpp"
#include "klab/hsc.hpp"
#include "klab/manifold.hpp"
#include "klab/metric.hpp"
#include "klab/util.hpp"

using namespace klab;

namespace {

void bm_curvature_fourier_torus(benchmark::State& state) {
  ManifoldSpec t2 = make_torus(2);
  FourierMode mode;
  mode.amplitude = 0.02;
  mode.wave = {1, 0, 1, 0};
  MetricPtr m = make_fourier_torus_metric(t2, {1.0, 1.0}, {mode});
  Point z = {cplx(0.21, 0.37), cplx(0.63, 0.11)};
  for (auto _ : state) {
    CurvatureData curv = curvature_at(*m, z);
    benchmark::DoNotOptimize(curv.scalar);
  }
}
BENCHMARK(bm_curvature_fourier_torus);

void bm_curvature_fubini_study(benchmark::State& state) {
  ManifoldSpec cp2 = make_projective(2);
  MetricPtr m = make_fubini_study_metric(cp2);
  Point z = {cplx(0.4, -0.2), cplx(0.1, 0.5)};
  for (auto _ : state) {
    CurvatureData curv = curvature_at(*m, z);
    benchmark::DoNotOptimize(curv.scalar);
  }
}
BENCHMARK(bm_curvature_fubini_study);

void bm_direction_search(benchmark::State& state) {
  ManifoldSpec cp2 = make_projective(2);
  MetricPtr m = make_fubini_study_metric(cp2, 1.3);
  CurvatureData curv = curvature_at(*m, {cplx(0.4, -0.2), cplx(0.1, 0.5)});
  HscSearchConfig cfg;
  cfg.restarts = 4;
  Rng rng(99);
  for (auto _ : state) {
    benchmark::DoNotOptimize(max_hsc_at(curv, cfg, rng));
  }
}
BENCHMARK(bm_direction_search);

void bm_flow_short_run(benchmark::State& state) {
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  Ansatz ansatz = Ansatz::radial(cp1, 64);
  FlowConfig cfg;
  cfg.horizon = 0.02;
  cfg.snapshots = 4;
  for (auto _ : state) {
    FlowTrajectory traj = run_krf(*fs, ansatz, cfg);
    benchmark::DoNotOptimize(traj.snapshots.back().sup_h);
  }
}
BENCHMARK(bm_flow_short_run);

void bm_newton_solve(benchmark::State& state) {
  ManifoldSpec cp1 = make_projective(1);
  MetricPtr fs = make_fubini_study_metric(cp1);
  Ansatz ansatz = Ansatz::radial(cp1, 64);
  for (auto _ : state) {
    ContinuitySolution sol = wu_yau_solve(*fs, ansatz, 3.0);
    benchmark::DoNotOptimize(sol.newton_residual);
  }
}
BENCHMARK(bm_newton_solve);

void bm_chern_quadrature(benchmark::State& state) {
  ManifoldSpec cp2 = make_projective(2);
  MetricPtr fs = make_fubini_study_metric(cp2);
  QuadratureAtlas atlas = make_default_atlas(cp2, 12);
  for (auto _ : state) {
    ChernData data = chern_forms(cp2, fs, atlas);
    benchmark::DoNotOptimize(data.c2_top);
  }
}
BENCHMARK(bm_chern_quadrature);

void bm_class_expansion(benchmark::State& state) {
  ManifoldSpec x = make_product({make_curve_data(2), make_curve_data(2), make_curve_data(2)});
  KahlerClassVector alpha = KahlerClassVector::zero(x.basis_size());
  for (int i = 0; i < x.basis_size(); ++i) alpha[i] = 1.0;
  const std::vector<double> schedule = {1.0, 0.5, 0.25, 0.125};
  for (auto _ : state) {
    CheckReport rep = asymptotic_expansion_check(x, alpha, 1, schedule);
    benchmark::DoNotOptimize(rep.values["limit"]);
  }
}
BENCHMARK(bm_class_expansion);

}  // namespace

BENCHMARK_MAIN();
