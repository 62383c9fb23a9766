#pragma once

#include <array>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "klab/util.hpp"

namespace klab {

/// Cohomology class in the model generator basis. Coefficients are kept
/// rational for the built-in generators; transcendental scales (areas in
/// multiples of 2*pi) enter only through explicit coefficients.
struct KahlerClassVector {
  std::vector<double> coeffs;

  KahlerClassVector() = default;
  explicit KahlerClassVector(std::vector<double> c) : coeffs(std::move(c)) {}
  static KahlerClassVector zero(int m) { return KahlerClassVector(std::vector<double>(m, 0.0)); }

  int size() const { return static_cast<int>(coeffs.size()); }
  double& operator[](int i) { return coeffs[i]; }
  double operator[](int i) const { return coeffs[i]; }

  KahlerClassVector& operator+=(const KahlerClassVector& o);
  KahlerClassVector& operator*=(double s);
  friend KahlerClassVector operator+(KahlerClassVector a, const KahlerClassVector& b) { return a += b; }
  friend KahlerClassVector operator*(double s, KahlerClassVector a) { return a *= s; }
  friend KahlerClassVector operator-(KahlerClassVector a, const KahlerClassVector& b);

  double inf_norm() const;
};

enum class ModelKind { Torus, Projective, CurveData, Product };

/// Model manifold: flat torus, projective space, genus-g curve class data,
/// or a finite product. Carries the H^{1,1} generator basis, the top
/// intersection tensor, the first Chern class and the Kahler cone
/// description (positivity of basis coefficients).
struct ManifoldSpec {
  ModelKind kind = ModelKind::Torus;
  int dim = 1;  // complex dimension

  // Torus data: one rectangular cell (re period, im period) per coordinate.
  std::vector<std::array<double, 2>> periods;
  // Curve class data.
  int genus = 0;
  // Product data.
  std::vector<ManifoldSpec> factors;

  std::vector<std::string> basis_names;
  // basis_factor[i] = factor index owning generator i (0 for non-products).
  std::vector<int> basis_factor;
  // basis_local[i] = index of the generator inside its factor's basis.
  std::vector<int> basis_local;

  KahlerClassVector c1;

  int basis_size() const { return static_cast<int>(basis_names.size()); }
  KahlerClassVector canonical_class() const;  // c1(K_X) = -c1(X)
  bool has_metric_models() const;             // false once a CurveData factor appears
  std::string describe() const;

  /// Top intersection number of n basis generators (indices may repeat).
  double intersect_basis(const std::vector<int>& idx) const;
};

ManifoldSpec make_torus(int n, std::vector<std::array<double, 2>> periods = {});
ManifoldSpec make_projective(int n);
ManifoldSpec make_curve_data(int genus);
ManifoldSpec make_product(std::vector<ManifoldSpec> factors);

/// Pairing of exactly n = dim classes against the intersection tensor.
double class_pairing(const ManifoldSpec& spec, const std::vector<KahlerClassVector>& classes);

/// alpha^n convenience wrapper.
double class_volume(const ManifoldSpec& spec, const KahlerClassVector& alpha);

bool in_kahler_cone(const ManifoldSpec& spec, const KahlerClassVector& alpha);
bool in_nef_cone(const ManifoldSpec& spec, const KahlerClassVector& alpha, double tol = 1e-12);

/// sup { t > 0 : alpha + 2*pi*t*c1(K_X) is Kahler }; +infinity when the
/// canonical direction never exits the cone.
double nef_threshold(const ManifoldSpec& spec, const KahlerClassVector& alpha);

/// Class of the unnormalized Ricci flow at time t: alpha + 2*pi*t*c1(K_X).
KahlerClassVector flow_class(const ManifoldSpec& spec, const KahlerClassVector& alpha, double t);

/// Class of the normalized flow: -2*pi*(1-e^{-t})*c1(X) + e^{-t}*alpha.
KahlerClassVector normalized_flow_class(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                                        double t);

/// Largest k with c1(K_X)^k pairing nonzero against Kahler classes.
/// Requires c1(K_X) nef in the model cone.
int numerical_kodaira_dimension(const ManifoldSpec& spec);

struct PropertyALimitOptions {
  double decay_threshold = 1e-6;  // |mu_i * alpha_i| must fall below this
  double cone_tol = 1e-12;
};

struct PropertyALimitTerm {
  double mu = 0.0;
  double weight_norm = 0.0;        // |mu_i * alpha_i|_inf
  bool shifted_class_nef = false;  // (n*mu_i/pi)*alpha_i + c1(K_X) in closed cone
};

struct PropertyALimitReport {
  bool pass = false;
  std::vector<PropertyALimitTerm> terms;
  KahlerClassVector limit_class;      // last shifted class
  double limit_distance_to_c1K = 0.0; // |limit_class - c1(K_X)|_inf
  std::string note;
};

/// Checks mu_i * alpha_i -> 0 coefficientwise and that every shifted class
/// (n*mu_i/pi)*alpha_i + c1(K_X) stays in the closed cone.
PropertyALimitReport property_A_limit_check(const ManifoldSpec& spec,
                                            const std::vector<std::pair<KahlerClassVector, double>>& seq,
                                            const PropertyALimitOptions& opts = {});

}  // namespace klab
