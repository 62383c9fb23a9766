#pragma once

#include <Eigen/Dense>

#include "klab/manifold.hpp"
#include "klab/metric.hpp"

namespace klab {

using Grid = Eigen::VectorXd;

// A metric restricted to a one-dimensional reduction: the active entry on the
// grid, constant passive diagonal entries, and the analytic Ricci entry.
struct ReducedMetric {
  Grid g_act;
  Grid ric_act;
  std::vector<double> passive;
};

// One-dimensional symmetry reduction with its finite-difference calculus.
// Two kinds:
//  - torus line: potential varies along the x axis of the first coordinate,
//    periodic grid over one period, remaining directions flat;
//  - radial: U(1)-invariant potential on projective(1), parametrized by the
//    compactified variable u = |z|^2/(1+|z|^2) on a uniform cell-centered
//    grid, which places nodes smoothly across both chart poles.
class Ansatz {
 public:
  static Ansatz torus_line(const ManifoldSpec& spec, int nodes);
  static Ansatz radial(const ManifoldSpec& spec, int nodes);

  int nodes() const { return N_; }
  int complex_dim() const { return spec_.dim; }
  bool periodic() const { return kind_ == Kind::TorusLine; }
  const ManifoldSpec& spec() const { return spec_; }
  double step() const { return h_; }
  const Grid& coordinate() const { return coord_; }
  Point embed(int i) const;

  Grid d1(const Grid& f) const;
  Grid d2(const Grid& f) const;

  // sqrt(-1) del delbar contribution of a reduced potential to the active entry
  Grid hessian(const Grid& phi) const;
  Eigen::MatrixXd hessian_matrix() const;

  // Ricci active entry from a positive active metric entry (finite differences;
  // the radial kind splits off the pole term of log g analytically so the
  // formula stays regular at both ends of the chart).
  Grid ricci_from_metric(const Grid& g_act) const;

  // scalar Laplacian of f with respect to the reduced metric
  Grid laplacian(const Grid& g_act, const Grid& f) const;

  // integral of F against omega^n for the metric diag(g_act, passive...)
  double integrate(const Grid& F, const Grid& g_act, const std::vector<double>& passive) const;

  ReducedMetric reduce(const MetricField& metric) const;

  std::string describe() const;

 private:
  enum class Kind { TorusLine, Radial };
  Ansatz(Kind k, ManifoldSpec spec, int nodes);

  Kind kind_;
  ManifoldSpec spec_;
  int N_;
  double h_;
  Grid coord_;
  double node_vol_ = 0.0;  // torus: real-coordinate volume per node
};

}  // namespace klab
