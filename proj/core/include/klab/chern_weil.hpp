#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "klab/atlas.hpp"
#include "klab/curvature.hpp"
#include "klab/manifold.hpp"
#include "klab/metric.hpp"
#include "klab/report.hpp"

namespace klab {

/// Coefficient of Theta_n = prod_k sqrt(-1) dz^k ^ dzbar^k in the wedge of
/// n (1,1)-forms, each given by its coefficient matrix M (form =
/// sum_{ij} M(i,j) sqrt(-1) dz^i ^ dzbar^j). For n equal copies of one form
/// this reduces to n! det(M); in particular omega^n has coefficient
/// n! det(g). Theta_n equals 2^n times the real coordinate volume.
double wedge_top_coeff(const std::vector<Eigen::MatrixXcd>& forms);

/// Pointwise characteristic data of a metric.
struct ChernSample {
  int n = 0;
  Eigen::MatrixXcd g;                   // metric = omega coefficients
  Eigen::MatrixXcd c1;                  // Ricci / (2 pi)
  std::vector<Eigen::MatrixXcd> theta;  // theta[p*n+q] = Theta^p_q coefficients

  /// Top coefficient of c2 ^ fillers (fillers supplies the remaining n-2
  /// one-one forms; empty for n = 2).
  double c2_wedge(const std::vector<Eigen::MatrixXcd>& fillers) const;
};

ChernSample chern_sample(const CurvatureData& curv);

/// Chern data of a model: the class-level c1 vector and the degree-two class
/// as a symmetric pairing matrix over the generator basis
/// (c2 = sum_{ab} c2_class(a,b) e_a e_b). Metric-backed instances also carry
/// a pointwise sampler and cached quadrature numbers.
struct ChernData {
  int n = 0;
  KahlerClassVector c1_class;
  Eigen::MatrixXd c2_class;

  bool has_forms = false;
  std::function<ChernSample(const Point&)> sample;
  double c1_top = 0.0;  // int c1^n
  double c2_top = 0.0;  // int c2 ^ omega^{n-2} (0 for n = 1)
  double volume = 0.0;  // int omega^n
};

/// Class arithmetic only; works for every model including curve class data.
/// Products use c(X x Y) = c(X) x c(Y) truncated to degree two.
ChernData chern_class_data(const ManifoldSpec& spec);

/// Class data plus pointwise samplers and quadrature Chern numbers.
ChernData chern_forms(const ManifoldSpec& spec, const MetricPtr& metric,
                      const QuadratureAtlas& atlas);

/// sum_{ab} Q(a,b) * (e_a . e_b . rest_1 ... rest_{n-2}) against the
/// intersection tensor. rest must have exactly n-2 entries.
double class_pair_quadratic(const ManifoldSpec& spec, const Eigen::MatrixXd& quad,
                            const std::vector<KahlerClassVector>& rest);

/// Pairing matrix of 2(n+1)/n * c2 - c1^2.
Eigen::MatrixXd my_defect_matrix(const ChernData& data);

/// (2(n+1)/n c2 - c1^2) . (-c1)^{n-2} as a number. The nonnegativity claim
/// attached by callers is meaningful only when the canonical class is nef;
/// the value is computed regardless.
double my_defect_MY1(const ManifoldSpec& spec, const ChernData& data);

/// (2(n+1)/n c2 - c1^2) . (-c1)^nu . alpha^{n-nu-2}. Requires n >= 3,
/// 0 <= nu <= n-2 and alpha nef in the model cone.
double my_defect_weighted(const ManifoldSpec& spec, const ChernData& data, int nu,
                          const KahlerClassVector& alpha);

struct CwAudit {
  double lhs = 0.0;    // class pairing (2(n+1)/n c2 - c1^2) . [omega]^{n-2}
  double rhs = 0.0;    // -(n+2)/(4 pi^2 n^2 (n-1)) int |Ric+omega|^2 omega^n
  double slack = 0.0;  // lhs - rhs
  double curvature_integral = 0.0;
  CheckReport report;
};

/// Checks lhs >= rhs - tol on a concrete metric; n = 1 is rejected. The
/// report records the (1,1)-norm convention in use (|omega|^2 = n).
CwAudit cw_inequality_audit(const ManifoldSpec& spec, const MetricPtr& metric,
                            const QuadratureAtlas& atlas, double tol = 1e-6);

/// Evaluates eps^{-(n-nu-2)} (2(n+1)/n c2 - c1^2).(2 pi c1(K) + 2 n eps a)^{n-2}
/// along a decreasing schedule by class arithmetic and verifies convergence to
/// binom(n-2,nu) (2 pi)^nu (2n)^{n-nu-2} times the weighted defect, with the
/// limit cross-checked against a brute-force binomial expansion (exact
/// agreement, both are finite polynomial arithmetic). Also verifies the 3n mu
/// variant, the e^t variant along the normalized flow classes, and the eps^2
/// decay of the volume-side bound. Requires n >= 3 and 0 <= nu <= n-2.
CheckReport asymptotic_expansion_check(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                                       int nu, const std::vector<double>& schedule);

}  // namespace klab
