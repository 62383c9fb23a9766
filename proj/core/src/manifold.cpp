#include "klab/manifold.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace klab {

KahlerClassVector& KahlerClassVector::operator+=(const KahlerClassVector& o) {
  if (coeffs.size() != o.coeffs.size()) throw ValidationError("class vector size mismatch");
  for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

KahlerClassVector& KahlerClassVector::operator*=(double s) {
  for (double& c : coeffs) c *= s;
  return *this;
}

KahlerClassVector operator-(KahlerClassVector a, const KahlerClassVector& b) {
  if (a.coeffs.size() != b.coeffs.size()) throw ValidationError("class vector size mismatch");
  for (size_t i = 0; i < a.coeffs.size(); ++i) a.coeffs[i] -= b.coeffs[i];
  return a;
}

double KahlerClassVector::inf_norm() const {
  double m = 0.0;
  for (double c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

KahlerClassVector ManifoldSpec::canonical_class() const {
  KahlerClassVector k = c1;
  k *= -1.0;
  return k;
}

bool ManifoldSpec::has_metric_models() const {
  if (kind == ModelKind::CurveData) return false;
  if (kind == ModelKind::Product) {
    for (const auto& f : factors)
      if (!f.has_metric_models()) return false;
  }
  return true;
}

std::string ManifoldSpec::describe() const {
  std::ostringstream os;
  switch (kind) {
    case ModelKind::Torus:
      os << "torus(n=" << dim << ")";
      break;
    case ModelKind::Projective:
      os << "projective(n=" << dim << ")";
      break;
    case ModelKind::CurveData:
      os << "curve(genus=" << genus << ")";
      break;
    case ModelKind::Product: {
      os << "product(";
      for (size_t i = 0; i < factors.size(); ++i) {
        if (i) os << ", ";
        os << factors[i].describe();
      }
      os << ")";
      break;
    }
  }
  return os.str();
}

namespace {

// Torus generators are the classes of sqrt(-1) dz^i /\ dz^bar i. Wedging n
// distinct generators over the cell gives 2^n * prod(cell areas); repeats
// vanish.
double torus_intersect(const ManifoldSpec& spec, const std::vector<int>& idx) {
  std::vector<int> seen(spec.dim, 0);
  for (int i : idx) {
    if (++seen[i] > 1) return 0.0;
  }
  double v = 1.0;
  for (int i = 0; i < spec.dim; ++i) v *= 2.0 * spec.periods[i][0] * spec.periods[i][1];
  return v;
}

}  // namespace

double ManifoldSpec::intersect_basis(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != dim) throw ValidationError("intersection needs n = dim generators");
  switch (kind) {
    case ModelKind::Torus:
      return torus_intersect(*this, idx);
    case ModelKind::Projective:
      return 1.0;  // single generator h with h^n = 1
    case ModelKind::CurveData:
      return 1.0;  // single generator, the unit point class
    case ModelKind::Product: {
      // Split the chosen generators by owning factor; the wedge product
      // factors iff each factor receives exactly its dimension.
      std::vector<std::vector<int>> per(factors.size());
      for (int i : idx) per[basis_factor[i]].push_back(basis_local[i]);
      double v = 1.0;
      for (size_t f = 0; f < factors.size(); ++f) {
        if (static_cast<int>(per[f].size()) != factors[f].dim) return 0.0;
        v *= factors[f].intersect_basis(per[f]);
      }
      return v;
    }
  }
  return 0.0;
}

ManifoldSpec make_torus(int n, std::vector<std::array<double, 2>> periods) {
  if (n < 1) throw ValidationError("torus dimension must be >= 1");
  if (periods.empty()) periods.assign(n, {1.0, 1.0});
  if (static_cast<int>(periods.size()) != n) throw ValidationError("torus needs one period pair per coordinate");
  for (auto& p : periods)
    if (p[0] <= 0.0 || p[1] <= 0.0) throw ValidationError("torus periods must be positive");
  ManifoldSpec s;
  s.kind = ModelKind::Torus;
  s.dim = n;
  s.periods = std::move(periods);
  for (int i = 0; i < n; ++i) {
    s.basis_names.push_back("T" + std::to_string(i + 1));
    s.basis_factor.push_back(0);
    s.basis_local.push_back(i);
  }
  s.c1 = KahlerClassVector::zero(n);
  return s;
}

ManifoldSpec make_projective(int n) {
  if (n < 1) throw ValidationError("projective dimension must be >= 1");
  ManifoldSpec s;
  s.kind = ModelKind::Projective;
  s.dim = n;
  s.basis_names = {"H"};
  s.basis_factor = {0};
  s.basis_local = {0};
  s.c1 = KahlerClassVector({static_cast<double>(n + 1)});
  return s;
}

ManifoldSpec make_curve_data(int genus) {
  if (genus < 0) throw ValidationError("genus must be >= 0");
  ManifoldSpec s;
  s.kind = ModelKind::CurveData;
  s.dim = 1;
  s.genus = genus;
  s.basis_names = {"C"};
  s.basis_factor = {0};
  s.basis_local = {0};
  s.c1 = KahlerClassVector({2.0 - 2.0 * genus});
  return s;
}

ManifoldSpec make_product(std::vector<ManifoldSpec> factors) {
  if (factors.size() < 2) throw ValidationError("product needs at least two factors");
  ManifoldSpec s;
  s.kind = ModelKind::Product;
  s.dim = 0;
  std::vector<double> c1;
  for (size_t f = 0; f < factors.size(); ++f) {
    s.dim += factors[f].dim;
    for (int j = 0; j < factors[f].basis_size(); ++j) {
      s.basis_names.push_back("f" + std::to_string(f) + "." + factors[f].basis_names[j]);
      s.basis_factor.push_back(static_cast<int>(f));
      s.basis_local.push_back(j);
      c1.push_back(factors[f].c1[j]);
    }
  }
  s.c1 = KahlerClassVector(std::move(c1));
  s.factors = std::move(factors);
  return s;
}

double class_pairing(const ManifoldSpec& spec, const std::vector<KahlerClassVector>& classes) {
  const int n = spec.dim;
  const int m = spec.basis_size();
  if (static_cast<int>(classes.size()) != n)
    throw ValidationError("class_pairing needs exactly n = " + std::to_string(n) + " classes");
  for (const auto& c : classes)
    if (c.size() != m) throw ValidationError("class vector does not match basis size");

  // Multilinear expansion over the generator basis. Sizes stay tiny
  // (m <= 6, n <= 4) so the direct m^n loop is exact and cheap.
  std::vector<int> idx(n, 0);
  KahanSum total;
  while (true) {
    double coeff = 1.0;
    for (int a = 0; a < n; ++a) coeff *= classes[a][idx[a]];
    if (coeff != 0.0) total.add(coeff * spec.intersect_basis(idx));
    int a = n - 1;
    while (a >= 0 && ++idx[a] == m) idx[a--] = 0;
    if (a < 0) break;
  }
  return total.value();
}

double class_volume(const ManifoldSpec& spec, const KahlerClassVector& alpha) {
  return class_pairing(spec, std::vector<KahlerClassVector>(spec.dim, alpha));
}

bool in_kahler_cone(const ManifoldSpec& spec, const KahlerClassVector& alpha) {
  if (alpha.size() != spec.basis_size()) throw ValidationError("class vector does not match basis size");
  for (double c : alpha.coeffs)
    if (!(c > 0.0)) return false;
  return true;
}

bool in_nef_cone(const ManifoldSpec& spec, const KahlerClassVector& alpha, double tol) {
  if (alpha.size() != spec.basis_size()) throw ValidationError("class vector does not match basis size");
  double scale = std::max(1.0, alpha.inf_norm());
  for (double c : alpha.coeffs)
    if (c < -tol * scale) return false;
  return true;
}

double nef_threshold(const ManifoldSpec& spec, const KahlerClassVector& alpha) {
  if (!in_kahler_cone(spec, alpha)) throw ValidationError("nef_threshold: alpha must be a Kahler class");
  const KahlerClassVector k = spec.canonical_class();
  double t = std::numeric_limits<double>::infinity();
  for (int i = 0; i < alpha.size(); ++i) {
    double rate = kTwoPi * k[i];
    if (rate < 0.0) t = std::min(t, alpha[i] / (-rate));
  }
  return t;
}

KahlerClassVector flow_class(const ManifoldSpec& spec, const KahlerClassVector& alpha, double t) {
  KahlerClassVector out = alpha;
  const KahlerClassVector k = spec.canonical_class();
  for (int i = 0; i < out.size(); ++i) out[i] += kTwoPi * t * k[i];
  return out;
}

KahlerClassVector normalized_flow_class(const ManifoldSpec& spec, const KahlerClassVector& alpha,
                                        double t) {
  const double decay = std::exp(-t);
  KahlerClassVector out = alpha;
  for (int i = 0; i < out.size(); ++i)
    out[i] = -kTwoPi * (1.0 - decay) * spec.c1[i] + decay * alpha[i];
  return out;
}

int numerical_kodaira_dimension(const ManifoldSpec& spec) {
  const KahlerClassVector k = spec.canonical_class();
  if (!in_nef_cone(spec, k)) throw ValidationError("numerical_kodaira_dimension: canonical class not nef");
  KahlerClassVector ones(std::vector<double>(spec.basis_size(), 1.0));
  const double scale = class_volume(spec, ones);
  for (int kk = spec.dim; kk >= 1; --kk) {
    std::vector<KahlerClassVector> args(kk, k);
    for (int j = kk; j < spec.dim; ++j) args.push_back(ones);
    if (std::abs(class_pairing(spec, args)) > 1e-9 * std::max(1.0, scale)) return kk;
  }
  return 0;
}

PropertyALimitReport property_A_limit_check(const ManifoldSpec& spec,
                                            const std::vector<std::pair<KahlerClassVector, double>>& seq,
                                            const PropertyALimitOptions& opts) {
  if (seq.empty()) throw ValidationError("property_A_limit_check: empty sequence");
  PropertyALimitReport rep;
  const KahlerClassVector k = spec.canonical_class();
  bool cone_ok = true;
  for (const auto& [alpha, mu] : seq) {
    if (alpha.size() != spec.basis_size()) throw ValidationError("class vector does not match basis size");
    if (mu < 0.0) throw ValidationError("property_A_limit_check: mu must be >= 0");
    PropertyALimitTerm term;
    term.mu = mu;
    KahlerClassVector weighted = alpha;
    weighted *= mu;
    term.weight_norm = weighted.inf_norm();
    KahlerClassVector shifted = alpha;
    shifted *= spec.dim * mu / kPi;
    shifted += k;
    term.shifted_class_nef = in_nef_cone(spec, shifted, opts.cone_tol);
    cone_ok = cone_ok && term.shifted_class_nef;
    rep.terms.push_back(term);
    rep.limit_class = shifted;
  }
  rep.limit_distance_to_c1K = (rep.limit_class - k).inf_norm();
  const double final_norm = rep.terms.back().weight_norm;
  const bool decays = final_norm <= opts.decay_threshold;
  rep.pass = decays && cone_ok;
  if (!decays)
    rep.note = "weighted classes do not decay below threshold (final |mu*alpha| = " +
               std::to_string(final_norm) + ")";
  else if (!cone_ok)
    rep.note = "a shifted class left the closed cone";
  else
    rep.note = "weighted classes decay; limit matches the canonical class direction";
  return rep;
}

}  // namespace klab
