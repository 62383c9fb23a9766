#include "klab/metric.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace klab {

MetricJet MetricJet::zero(int n) {
  MetricJet j;
  j.g = Eigen::MatrixXcd::Zero(n, n);
  j.dg.assign(n, Eigen::MatrixXcd::Zero(n, n));
  j.ddg.assign(static_cast<size_t>(n) * n, Eigen::MatrixXcd::Zero(n, n));
  return j;
}

namespace {

class FlatTorusMetric final : public MetricField {
 public:
  FlatTorusMetric(const ManifoldSpec& spec, std::vector<double> coeffs)
      : n_(spec.dim), coeffs_(std::move(coeffs)) {}

  int dim() const override { return n_; }

  MetricJet jet(const Point&) const override {
    MetricJet j = MetricJet::zero(n_);
    for (int i = 0; i < n_; ++i) j.g(i, i) = coeffs_[i];
    return j;
  }

  Eigen::MatrixXcd metric(const Point&) const override {
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n_, n_);
    for (int i = 0; i < n_; ++i) g(i, i) = coeffs_[i];
    return g;
  }

  std::optional<KahlerClassVector> cohomology_class() const override {
    return KahlerClassVector(coeffs_);
  }

  std::string describe() const override { return "flat-torus"; }

 private:
  int n_;
  std::vector<double> coeffs_;
};

// Real trigonometric potential on the torus. Each mode contributes
// amplitude * cos(w.theta + phase) with w fixed by integer mode numbers and
// the cell periods; Wirtinger derivatives of any order are products of the
// per-coordinate factors c_j = (w_x - i w_y)/2.
class FourierTorusMetric final : public MetricField {
 public:
  FourierTorusMetric(const ManifoldSpec& spec, std::vector<double> base,
                     std::vector<FourierMode> modes)
      : n_(spec.dim), base_(std::move(base)), modes_(std::move(modes)) {
    for (const auto& m : modes_) {
      if (static_cast<int>(m.wave.size()) != 2 * n_)
        throw ValidationError("fourier mode needs 2n integer mode numbers");
      std::vector<cplx> c(n_);
      bool zero = true;
      std::vector<double> w(2 * n_);
      for (int a = 0; a < 2 * n_; ++a) {
        double period = (a % 2 == 0) ? spec.periods[a / 2][0] : spec.periods[a / 2][1];
        w[a] = kTwoPi * m.wave[a] / period;
        if (m.wave[a] != 0) zero = false;
      }
      if (zero) throw ValidationError("fourier mode must have a nonzero wave vector");
      for (int j = 0; j < n_; ++j) c[j] = cplx(0.5 * w[2 * j], -0.5 * w[2 * j + 1]);
      factors_.push_back(std::move(c));
      waves_.push_back(std::move(w));
    }
  }

  int dim() const override { return n_; }

  MetricJet jet(const Point& z) const override {
    MetricJet j = MetricJet::zero(n_);
    for (int i = 0; i < n_; ++i) j.g(i, i) = base_[i];
    for (size_t m = 0; m < modes_.size(); ++m) {
      double arg = modes_[m].phase;
      for (int i = 0; i < n_; ++i)
        arg += waves_[m][2 * i] * z[i].real() + waves_[m][2 * i + 1] * z[i].imag();
      const cplx E(modes_[m].amplitude * std::cos(arg), modes_[m].amplitude * std::sin(arg));
      const auto& c = factors_[m];
      const cplx I(0.0, 1.0);
      for (int i = 0; i < n_; ++i)
        for (int jj = 0; jj < n_; ++jj) {
          // d_i d_{bar j}: two derivatives, even order, value U * Re(E).
          cplx U = (I * c[i]) * (I * std::conj(c[jj]));
          j.g(i, jj) += U * E.real();
          for (int k = 0; k < n_; ++k) {
            cplx U3 = U * (I * c[k]);
            j.dg[k](i, jj) += U3 * cplx(0.0, E.imag());
            for (int l = 0; l < n_; ++l) {
              cplx U4 = U3 * (I * std::conj(c[l]));
              j.ddg[static_cast<size_t>(k) * n_ + l](i, jj) += U4 * E.real();
            }
          }
        }
    }
    return j;
  }

  std::optional<KahlerClassVector> cohomology_class() const override {
    return KahlerClassVector(base_);
  }

  std::string describe() const override { return "fourier-torus"; }

 private:
  int n_;
  std::vector<double> base_;
  std::vector<FourierMode> modes_;
  std::vector<std::vector<cplx>> factors_;
  std::vector<std::vector<double>> waves_;
};

class FubiniStudyMetric final : public MetricField {
 public:
  FubiniStudyMetric(int n, double scale) : n_(n), c_(scale) {}

  int dim() const override { return n_; }

  Eigen::MatrixXcd metric(const Point& z) const override {
    double A = 1.0;
    for (const auto& zi : z) A += std::norm(zi);
    Eigen::MatrixXcd g(n_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        cplx v = (i == j) ? cplx(1.0 / A) : cplx(0.0);
        v -= std::conj(z[i]) * z[j] / (A * A);
        g(i, j) = c_ * v;
      }
    return g;
  }

  MetricJet jet(const Point& z) const override {
    const double A = [&] {
      double a = 1.0;
      for (const auto& zi : z) a += std::norm(zi);
      return a;
    }();
    const double A2 = A * A, A3 = A2 * A, A4 = A3 * A;
    MetricJet j = MetricJet::zero(n_);
    auto d = [](int a, int b) { return a == b ? 1.0 : 0.0; };
    for (int i = 0; i < n_; ++i)
      for (int q = 0; q < n_; ++q) {
        const cplx zi_bar = std::conj(z[i]);
        const cplx zq = z[q];
        j.g(i, q) = c_ * (d(i, q) / A - zi_bar * zq / A2);
        for (int k = 0; k < n_; ++k) {
          const cplx zk_bar = std::conj(z[k]);
          j.dg[k](i, q) =
              c_ * (-(d(i, q) * zk_bar + d(q, k) * zi_bar) / A2 + 2.0 * zi_bar * zq * zk_bar / A3);
          for (int l = 0; l < n_; ++l) {
            const cplx zl = z[l];
            j.ddg[static_cast<size_t>(k) * n_ + l](i, q) =
                c_ * (-(d(i, q) * d(k, l) + d(q, k) * d(i, l)) / A2 +
                      2.0 * (d(i, q) * zk_bar + d(q, k) * zi_bar) * zl / A3 +
                      2.0 * (d(i, l) * zq * zk_bar + d(k, l) * zi_bar * zq) / A3 -
                      6.0 * zi_bar * zq * zk_bar * zl / A4);
          }
        }
      }
    return j;
  }

  std::optional<KahlerClassVector> cohomology_class() const override {
    return KahlerClassVector({kTwoPi * c_});
  }

  std::string describe() const override { return "fubini-study"; }

 private:
  int n_;
  double c_;
};

class RadialMetricField final : public MetricField {
 public:
  RadialMetricField(RadialProfile profile) : profile_(std::move(profile)) {
    for (double s = -40.0; s <= 40.0; s += 0.05)
      if (profile_.potential_dd(s) <= 0.0)
        throw NumericalError("radial potential loses convexity at s = " + std::to_string(s));
  }

  int dim() const override { return 1; }

  MetricJet jet(const Point& z) const override {
    const double r2 = std::norm(z[0]);
    if (r2 <= 0.0) throw ValidationError("radial metric jet requested at the chart pole");
    const double s = std::log(r2);
    MetricJet j = MetricJet::zero(1);
    j.g(0, 0) = profile_.m(s);
    j.dg[0](0, 0) = profile_.m_d(s) / z[0];
    j.ddg[0](0, 0) = profile_.m_dd(s) / r2;
    return j;
  }

  std::optional<KahlerClassVector> cohomology_class() const override {
    return KahlerClassVector({kTwoPi * profile_.scale});
  }

  std::string describe() const override { return "radial-projective"; }

  const RadialProfile& profile() const { return profile_; }

 private:
  RadialProfile profile_;
};

class ProductMetric final : public MetricField {
 public:
  ProductMetric(std::vector<MetricPtr> factors, std::vector<KahlerClassVector> classes, bool has_class)
      : factors_(std::move(factors)), classes_(std::move(classes)), has_class_(has_class) {
    n_ = 0;
    for (const auto& f : factors_) {
      offsets_.push_back(n_);
      n_ += f->dim();
    }
  }

  int dim() const override { return n_; }

  MetricJet jet(const Point& z) const override {
    MetricJet j = MetricJet::zero(n_);
    for (size_t f = 0; f < factors_.size(); ++f) {
      const int off = offsets_[f];
      const int m = factors_[f]->dim();
      Point zf(z.begin() + off, z.begin() + off + m);
      MetricJet jf = factors_[f]->jet(zf);
      j.g.block(off, off, m, m) = jf.g;
      for (int k = 0; k < m; ++k) j.dg[off + k].block(off, off, m, m) = jf.dg[k];
      for (int k = 0; k < m; ++k)
        for (int l = 0; l < m; ++l)
          j.ddg[static_cast<size_t>(off + k) * n_ + (off + l)].block(off, off, m, m) =
              jf.ddg[static_cast<size_t>(k) * m + l];
    }
    return j;
  }

  std::optional<KahlerClassVector> cohomology_class() const override {
    if (!has_class_) return std::nullopt;
    std::vector<double> all;
    for (const auto& c : classes_) all.insert(all.end(), c.coeffs.begin(), c.coeffs.end());
    return KahlerClassVector(all);
  }

  std::string describe() const override { return "product"; }

 private:
  std::vector<MetricPtr> factors_;
  std::vector<KahlerClassVector> classes_;
  bool has_class_;
  std::vector<int> offsets_;
  int n_ = 0;
};

class ConstantHermitianMetric final : public MetricField {
 public:
  ConstantHermitianMetric(int n, Eigen::MatrixXcd h) : n_(n), h_(std::move(h)) {}
  int dim() const override { return n_; }
  MetricJet jet(const Point&) const override {
    MetricJet j = MetricJet::zero(n_);
    j.g = h_;
    return j;
  }
  Eigen::MatrixXcd metric(const Point&) const override { return h_; }
  std::string describe() const override { return "constant-hermitian"; }

 private:
  int n_;
  Eigen::MatrixXcd h_;
};

class ScaledMetric final : public MetricField {
 public:
  ScaledMetric(MetricPtr base, double c) : base_(std::move(base)), c_(c) {}
  int dim() const override { return base_->dim(); }
  MetricJet jet(const Point& z) const override {
    MetricJet j = base_->jet(z);
    j.g *= c_;
    for (auto& m : j.dg) m *= c_;
    for (auto& m : j.ddg) m *= c_;
    return j;
  }
  Eigen::MatrixXcd metric(const Point& z) const override { return c_ * base_->metric(z); }
  std::optional<KahlerClassVector> cohomology_class() const override {
    auto c = base_->cohomology_class();
    if (!c) return std::nullopt;
    *c *= c_;
    return c;
  }
  std::string describe() const override { return "scaled(" + base_->describe() + ")"; }

 private:
  MetricPtr base_;
  double c_;
};

}  // namespace

MetricPtr make_flat_torus_metric(const ManifoldSpec& spec, std::vector<double> coeffs) {
  if (spec.kind != ModelKind::Torus) throw ValidationError("flat metric needs a torus spec");
  if (coeffs.empty()) coeffs.assign(spec.dim, 1.0);
  if (static_cast<int>(coeffs.size()) != spec.dim)
    throw ValidationError("flat metric needs one coefficient per coordinate");
  for (double c : coeffs)
    if (c <= 0.0) throw ValidationError("flat metric coefficients must be positive");
  return std::make_shared<FlatTorusMetric>(spec, std::move(coeffs));
}

MetricPtr make_fourier_torus_metric(const ManifoldSpec& spec, std::vector<double> base_coeffs,
                                    std::vector<FourierMode> modes) {
  if (spec.kind != ModelKind::Torus) throw ValidationError("fourier metric needs a torus spec");
  if (base_coeffs.empty()) base_coeffs.assign(spec.dim, 1.0);
  if (static_cast<int>(base_coeffs.size()) != spec.dim)
    throw ValidationError("fourier metric needs one base coefficient per coordinate");
  auto field = std::make_shared<FourierTorusMetric>(spec, base_coeffs, std::move(modes));

  // Positivity probe on a grid fine enough for the low mode numbers in use.
  const int per_axis = 24;
  const int n = spec.dim;
  std::vector<int> idx(2 * n, 0);
  double min_eig = std::numeric_limits<double>::infinity();
  while (true) {
    Point z(n);
    for (int i = 0; i < n; ++i) {
      double x = (idx[2 * i] + 0.5) * spec.periods[i][0] / per_axis;
      double y = (idx[2 * i + 1] + 0.5) * spec.periods[i][1] / per_axis;
      z[i] = {x, y};
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(field->metric(z));
    min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    int a = 2 * n - 1;
    while (a >= 0 && ++idx[a] == per_axis) idx[a--] = 0;
    if (a < 0) break;
  }
  if (min_eig <= 0.0)
    throw NumericalError("fourier perturbation breaks positivity (min eigenvalue " +
                         std::to_string(min_eig) + ")");
  return field;
}

MetricPtr random_fourier_torus_metric(const ManifoldSpec& spec, Rng& rng, int max_mode,
                                      double amplitude) {
  const int n = spec.dim;
  double amp = amplitude;
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::vector<FourierMode> modes;
    const int count = 3;
    for (int m = 0; m < count; ++m) {
      FourierMode mode;
      mode.wave.assign(2 * n, 0);
      bool nonzero = false;
      while (!nonzero) {
        for (int a = 0; a < 2 * n; ++a) {
          mode.wave[a] = static_cast<int>(std::floor(uniform(rng, -max_mode - 1.0, max_mode + 1.0)));
          mode.wave[a] = std::clamp(mode.wave[a], -max_mode, max_mode);
          if (mode.wave[a] != 0) nonzero = true;
        }
      }
      mode.amplitude = amp * uniform(rng, 0.5, 1.0);
      mode.phase = uniform(rng, 0.0, kTwoPi);
      modes.push_back(std::move(mode));
    }
    try {
      return make_fourier_torus_metric(spec, {}, std::move(modes));
    } catch (const NumericalError&) {
      amp *= 0.5;
    }
  }
  throw NumericalError("failed to draw a positive fourier metric");
}

MetricPtr make_fubini_study_metric(const ManifoldSpec& spec, double scale) {
  if (spec.kind != ModelKind::Projective)
    throw ValidationError("fubini-study metric needs a projective spec");
  if (scale <= 0.0) throw ValidationError("fubini-study scale must be positive");
  return std::make_shared<FubiniStudyMetric>(spec.dim, scale);
}

MetricPtr make_radial_metric(const ManifoldSpec& spec, double scale, std::vector<RadialBump> bumps) {
  if (spec.kind != ModelKind::Projective || spec.dim != 1)
    throw ValidationError("radial metric is implemented on projective(1)");
  if (scale <= 0.0) throw ValidationError("radial scale must be positive");
  RadialProfile p;
  p.scale = scale;
  p.bumps = std::move(bumps);
  for (const auto& b : p.bumps)
    if (b.width <= 0.0) throw ValidationError("radial bump width must be positive");
  return std::make_shared<RadialMetricField>(std::move(p));
}

MetricPtr make_product_metric(const ManifoldSpec& spec, std::vector<MetricPtr> factors) {
  if (spec.kind != ModelKind::Product) throw ValidationError("product metric needs a product spec");
  if (factors.size() != spec.factors.size())
    throw ValidationError("product metric needs one factor metric per factor");
  std::vector<KahlerClassVector> classes;
  bool has_class = true;
  for (size_t f = 0; f < factors.size(); ++f) {
    if (factors[f]->dim() != spec.factors[f].dim)
      throw ValidationError("factor metric dimension mismatch");
    auto c = factors[f]->cohomology_class();
    if (c)
      classes.push_back(*c);
    else
      has_class = false;
  }
  return std::make_shared<ProductMetric>(std::move(factors), std::move(classes), has_class);
}

MetricPtr make_constant_hermitian_metric(int n, const Eigen::MatrixXcd& h) {
  if (h.rows() != n || h.cols() != n) throw ValidationError("hermitian matrix size mismatch");
  if ((h - h.adjoint()).norm() > 1e-12 * (1.0 + h.norm()))
    throw ValidationError("matrix is not hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.eigenvalues().minCoeff() <= 0.0) throw ValidationError("matrix is not positive");
  return std::make_shared<ConstantHermitianMetric>(n, h);
}

MetricPtr make_scaled_metric(MetricPtr base, double c) {
  if (c <= 0.0) throw ValidationError("metric scale must be positive");
  return std::make_shared<ScaledMetric>(std::move(base), c);
}

namespace {

// sig*(1-sig) without cancellation: 1/(1+e^{-s}) rounds to 1 already near
// s = 37, which would zero the convex core while bump tails are still alive.
inline double logistic_product(double s) {
  const double x = std::exp(-std::abs(s));
  return x / ((1.0 + x) * (1.0 + x));
}

}  // namespace

double RadialProfile::potential_dd(double s) const {
  double v = scale * logistic_product(s);
  for (const auto& b : bumps) {
    const double t = std::tanh((s - b.center) / b.width);
    v += -(2.0 * b.amplitude / b.width) * (1.0 - t * t) * t;
  }
  return v;
}

double RadialProfile::potential_d3(double s) const {
  // (1 - 2 sig) = -tanh(s/2)
  double v = scale * logistic_product(s) * -std::tanh(0.5 * s);
  for (const auto& b : bumps) {
    const double t = std::tanh((s - b.center) / b.width);
    const double sech2 = 1.0 - t * t;
    v += -(2.0 * b.amplitude / (b.width * b.width)) * (sech2 * sech2 - 2.0 * sech2 * t * t);
  }
  return v;
}

double RadialProfile::potential_d4(double s) const {
  // (1 - 6 sig + 6 sig^2) = 1 - 6 sig (1 - sig)
  const double u = logistic_product(s);
  double v = scale * u * (1.0 - 6.0 * u);
  for (const auto& b : bumps) {
    const double t = std::tanh((s - b.center) / b.width);
    const double sech2 = 1.0 - t * t;
    v += -(2.0 * b.amplitude / (b.width * b.width * b.width)) *
         (-8.0 * sech2 * sech2 * t + 4.0 * sech2 * t * t * t);
  }
  return v;
}

double RadialProfile::m(double s) const { return std::exp(-s) * potential_dd(s); }

double RadialProfile::m_d(double s) const {
  return std::exp(-s) * (potential_d3(s) - potential_dd(s));
}

double RadialProfile::m_dd(double s) const {
  return std::exp(-s) * (potential_d4(s) - 2.0 * potential_d3(s) + potential_dd(s));
}

double RadialProfile::ricci(double s) const {
  const double mm = m(s), md = m_d(s), mdd = m_dd(s);
  return -std::exp(-s) * (mdd * mm - md * md) / (mm * mm);
}

const RadialProfile* radial_profile_of(const MetricField& field) {
  auto* r = dynamic_cast<const RadialMetricField*>(&field);
  return r ? &r->profile() : nullptr;
}

}  // namespace klab
