#include "klab/curvature.hpp"

#include <Eigen/Eigenvalues>

namespace klab {

double CurvatureData::quartic(const Eigen::VectorXcd& xi, const Eigen::VectorXcd& eta) const {
  cplx acc = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      const auto& Rkl = R[static_cast<size_t>(k) * n + l];
      cplx inner = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inner += Rkl(i, j) * xi(i) * std::conj(xi(j));
      acc += inner * eta(k) * std::conj(eta(l));
    }
  return acc.real();
}

double CurvatureData::norm_sq(const Eigen::VectorXcd& xi) const {
  cplx acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) acc += g(i, j) * xi(i) * std::conj(xi(j));
  return acc.real();
}

double CurvatureData::hsc(const Eigen::VectorXcd& xi) const {
  const double s = norm_sq(xi);
  if (s <= 0.0) throw ValidationError("hsc needs a nonzero direction");
  return quartic(xi, xi) / (s * s);
}

double CurvatureData::symmetry_defect() const {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const cplx v = curvature(i, j, k, l);
          worst = std::max(worst, std::abs(v - curvature(k, j, i, l)));
          worst = std::max(worst, std::abs(v - curvature(i, l, k, j)));
          worst = std::max(worst, std::abs(v - std::conj(curvature(j, i, l, k))));
        }
  return worst;
}

double CurvatureData::contraction_defect() const {
  double worst = 0.0;
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      cplx tr = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) tr += g_inv(j, i) * curvature(i, j, k, l);
      worst = std::max(worst, std::abs(tr - ricci(k, l)));
    }
  return worst;
}

CurvatureData curvature_from_jet(const MetricJet& jet) {
  const int n = static_cast<int>(jet.g.rows());
  CurvatureData c;
  c.n = n;
  c.g = jet.g;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jet.g);
  if (es.eigenvalues().minCoeff() <= 0.0)
    throw NumericalError("metric is degenerate (min eigenvalue " +
                         std::to_string(es.eigenvalues().minCoeff()) + ")");
  c.g_inv = jet.g.inverse();

  c.R.assign(static_cast<size_t>(n) * n, Eigen::MatrixXcd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l) {
      Eigen::MatrixXcd& Rkl = c.R[static_cast<size_t>(k) * n + l];
      const Eigen::MatrixXcd& dd = jet.ddg[static_cast<size_t>(k) * n + l];
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cplx second = 0.0;
          for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
              second += c.g_inv(q, p) * jet.dg[k](i, q) * std::conj(jet.dg[l](j, p));
          Rkl(i, j) = -dd(i, j) + second;
        }
    }

  c.ricci = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      cplx acc = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += c.g_inv(l, k) * c.R[static_cast<size_t>(i) * n + j](k, l);
      c.ricci(i, j) = acc;
    }

  cplx s = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) s += c.g_inv(j, i) * c.ricci(i, j);
  c.scalar = s.real();
  return c;
}

CurvatureData curvature_at(const MetricField& metric, const Point& z) {
  return curvature_from_jet(metric.jet(z));
}

}  // namespace klab
