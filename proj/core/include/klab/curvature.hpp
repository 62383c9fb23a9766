#pragma once

#include "klab/metric.hpp"

namespace klab {

// Full (1,1)-type curvature data of a Kähler metric at one point.
// Storage: R[k*n+l](i,j) = R_{i jbar k lbar}. Sign convention is fixed so the
// flat torus is identically zero and the standard round metric on the
// projective line (potential log(1+|z|^2), area 2pi) has H = +2.
struct CurvatureData {
  int n = 0;
  Eigen::MatrixXcd g;
  Eigen::MatrixXcd g_inv;  // g_inv(j, i) is the pairing inverse g^{jbar i}
  std::vector<Eigen::MatrixXcd> R;
  Eigen::MatrixXcd ricci;
  double scalar = 0.0;

  cplx curvature(int i, int j, int k, int l) const {
    return R[static_cast<size_t>(k) * n + l](i, j);
  }

  // R(xi, conj xi, eta, conj eta)
  double quartic(const Eigen::VectorXcd& xi, const Eigen::VectorXcd& eta) const;
  // |xi|^2 with respect to g
  double norm_sq(const Eigen::VectorXcd& xi) const;
  // H(xi) = R(xi, conj xi, xi, conj xi) / |xi|^4
  double hsc(const Eigen::VectorXcd& xi) const;

  // Maximal Kähler symmetry / Hermitian-pairing defect, for self-tests.
  double symmetry_defect() const;
  // max |g^{jbar i} R_{i jbar k lbar} - Ric_{k lbar}|
  double contraction_defect() const;
};

CurvatureData curvature_from_jet(const MetricJet& jet);
CurvatureData curvature_at(const MetricField& metric, const Point& z);

}  // namespace klab
