#pragma once

#include <Eigen/Dense>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "klab/manifold.hpp"
#include "klab/util.hpp"

namespace klab {

/// Pointwise metric data: g_{i \bar j}, holomorphic first derivatives and the
/// mixed second derivatives, everything a curvature tensor needs.
struct MetricJet {
  Eigen::MatrixXcd g;
  std::vector<Eigen::MatrixXcd> dg;   // dg[k](i,j)   = d_k g_{i \bar j}
  std::vector<Eigen::MatrixXcd> ddg;  // ddg[k*n+l](i,j) = d_k d_{\bar l} g_{i \bar j}

  static MetricJet zero(int n);
};

/// A Kahler metric on one of the model manifolds, evaluable on chart points.
class MetricField {
 public:
  virtual ~MetricField() = default;
  virtual int dim() const = 0;
  virtual MetricJet jet(const Point& z) const = 0;
  virtual Eigen::MatrixXcd metric(const Point& z) const { return jet(z).g; }
  virtual std::optional<KahlerClassVector> cohomology_class() const { return std::nullopt; }
  virtual std::string describe() const = 0;
};

using MetricPtr = std::shared_ptr<const MetricField>;

/// Flat metric diag(coeffs) on a torus.
MetricPtr make_flat_torus_metric(const ManifoldSpec& spec, std::vector<double> coeffs = {});

struct FourierMode {
  double amplitude = 0.0;
  std::vector<int> wave;  // integer mode numbers per real axis (x1,y1,...)
  double phase = 0.0;
};

/// Flat torus metric perturbed by a real trigonometric potential; all
/// derivatives are exact. Throws if the perturbed form fails positivity on a
/// probe grid.
MetricPtr make_fourier_torus_metric(const ManifoldSpec& spec, std::vector<double> base_coeffs,
                                    std::vector<FourierMode> modes);

/// Draw a random positive Fourier perturbation of the flat metric.
MetricPtr random_fourier_torus_metric(const ManifoldSpec& spec, Rng& rng, int max_mode = 2,
                                      double amplitude = 0.02);

/// Fubini-Study metric with potential scale*log(1+|z|^2); line area 2*pi*scale.
MetricPtr make_fubini_study_metric(const ManifoldSpec& spec, double scale = 1.0);

struct RadialBump {
  double amplitude = 0.0;
  double center = 0.0;  // in the log radius s = log|z|^2
  double width = 1.0;
};

/// Rotation invariant metric on projective(1): potential
/// scale*log(1+e^s) + sum_j amp_j*width_j*tanh((s-center_j)/width_j),
/// class-preserving bumps with analytic derivatives through fourth order.
MetricPtr make_radial_metric(const ManifoldSpec& spec, double scale, std::vector<RadialBump> bumps);

/// Block diagonal metric on a product model.
MetricPtr make_product_metric(const ManifoldSpec& spec, std::vector<MetricPtr> factors);

/// Constant positive Hermitian form; valid metric on a torus, and admissible
/// pointwise reference data for the curvature inequalities on any model.
MetricPtr make_constant_hermitian_metric(int n, const Eigen::MatrixXcd& h);

/// c * base, same manifold.
MetricPtr make_scaled_metric(MetricPtr base, double c);

/// Access to the radial profile of a rotation invariant metric (n = 1).
/// Values are s-derivatives of the metric coefficient m(s) = e^{-s} Phi''(s).
struct RadialProfile {
  double scale = 1.0;
  std::vector<RadialBump> bumps;

  double potential_dd(double s) const;    // Phi''
  double potential_d3(double s) const;    // Phi'''
  double potential_d4(double s) const;    // Phi''''
  double m(double s) const;               // metric coefficient
  double m_d(double s) const;             // d m / d s
  double m_dd(double s) const;
  double ricci(double s) const;           // Ric_{z \bar z} at log radius s
};

const RadialProfile* radial_profile_of(const MetricField& field);

}  // namespace klab
