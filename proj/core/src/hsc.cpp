#include "klab/hsc.hpp"

#include <Eigen/Cholesky>

namespace klab {

namespace {

// Quartic curvature form in a g-orthonormal frame: T[a][b][c][d] with
// q(v) = sum T_{abcd} v_a conj(v_b) v_c conj(v_d), so that q(v) = H(E v)
// for |v| = 1, where the frame matrix E satisfies E^T g conj(E) = I.
struct FrameQuartic {
  int n;
  std::vector<cplx> T;  // index ((a*n+b)*n+c)*n+d

  cplx& at(int a, int b, int c, int d) {
    return T[static_cast<size_t>(((a * n + b) * n + c)) * n + d];
  }
  cplx at(int a, int b, int c, int d) const {
    return T[static_cast<size_t>(((a * n + b) * n + c)) * n + d];
  }

  double value(const Eigen::VectorXcd& v) const {
    cplx acc = 0.0;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const cplx vab = v(a) * std::conj(v(b));
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) acc += at(a, b, c, d) * vab * v(c) * std::conj(v(d));
      }
    return acc.real();
  }

  // Wirtinger gradient wrt conj(v): grad_b = 2 sum T_{abcd} v_a v_c conj(v_d)
  Eigen::VectorXcd gradient(const Eigen::VectorXcd& v) const {
    Eigen::VectorXcd grad = Eigen::VectorXcd::Zero(n);
    for (int b = 0; b < n; ++b) {
      cplx acc = 0.0;
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c)
          for (int d = 0; d < n; ++d) acc += at(a, b, c, d) * v(a) * v(c) * std::conj(v(d));
      grad(b) = 2.0 * acc;
    }
    return grad;
  }

  double scale() const {
    double s = 0.0;
    for (const auto& t : T) s = std::max(s, std::abs(t));
    return s;
  }
};

FrameQuartic frame_quartic(const CurvatureData& curv) {
  const int n = curv.n;
  Eigen::LLT<Eigen::MatrixXcd> llt(curv.g);
  if (llt.info() != Eigen::Success) throw NumericalError("metric not positive at frame transform");
  Eigen::MatrixXcd L = llt.matrixL();
  Eigen::MatrixXcd E = L.adjoint()
                           .triangularView<Eigen::Upper>()
                           .solve(Eigen::MatrixXcd::Identity(n, n))
                           .conjugate();

  FrameQuartic fq;
  fq.n = n;
  fq.T.assign(static_cast<size_t>(n) * n * n * n, cplx(0.0));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          cplx acc = 0.0;
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
              const cplx eij = E(i, a) * std::conj(E(j, b));
              for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                  acc += curv.curvature(i, j, k, l) * eij * E(k, c) * std::conj(E(l, d));
            }
          fq.at(a, b, c, d) = acc;
        }
  return fq;
}

Eigen::VectorXcd random_direction(int n, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(n);
  for (int i = 0; i < n; ++i) v(i) = cplx(gauss(rng), gauss(rng));
  const double nm = v.norm();
  return nm > 0 ? Eigen::VectorXcd(v / nm) : Eigen::VectorXcd::Unit(n, 0);
}

double ascend(const FrameQuartic& fq, Eigen::VectorXcd v, const HscSearchConfig& cfg,
              Eigen::VectorXcd* v_out) {
  v.normalize();
  double q = fq.value(v);
  double eta = 0.5 / (1.0 + fq.scale());
  for (int it = 0; it < cfg.max_iters; ++it) {
    Eigen::VectorXcd grad = fq.gradient(v);
    Eigen::VectorXcd tangent = grad - v * v.dot(grad);
    const double tnorm = tangent.norm();
    if (tnorm < cfg.grad_tol * (1.0 + std::abs(q))) break;
    bool improved = false;
    for (int bt = 0; bt < 30; ++bt) {
      Eigen::VectorXcd trial = (v + eta * tangent).normalized();
      const double qt = fq.value(trial);
      if (qt > q + 1e-16 * std::abs(q)) {
        v = trial;
        q = qt;
        eta = std::min(eta * 1.5, 1.0 / (1.0 + fq.scale()) * 8.0);
        improved = true;
        break;
      }
      eta *= 0.5;
    }
    if (!improved) break;
  }
  if (v_out) *v_out = v;
  return q;
}

}  // namespace

double max_hsc_at(const CurvatureData& curv, const HscSearchConfig& cfg, Rng& rng,
                  Eigen::VectorXcd* arg_out, const Eigen::VectorXcd* warm) {
  const int n = curv.n;
  if (n == 1) {
    if (arg_out) {
      arg_out->resize(1);
      (*arg_out)(0) = 1.0;
    }
    const double g = curv.g(0, 0).real();
    return curv.curvature(0, 0, 0, 0).real() / (g * g);
  }

  FrameQuartic fq = frame_quartic(curv);
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXcd best_v = Eigen::VectorXcd::Unit(n, 0);

  auto consider = [&](const Eigen::VectorXcd& start) {
    Eigen::VectorXcd v_fin;
    const double q = ascend(fq, start, cfg, &v_fin);
    if (q > best) {
      best = q;
      best_v = v_fin;
    }
  };

  if (warm && warm->size() == n && warm->norm() > 0) consider(warm->normalized());
  for (int a = 0; a < n; ++a) consider(Eigen::VectorXcd::Unit(n, a));
  for (int r = 0; r < cfg.restarts; ++r) consider(random_direction(n, rng));

  if (arg_out) *arg_out = best_v;
  return best;
}

HscEstimate sup_hsc(const MetricField& metric, const QuadratureAtlas& atlas,
                    const HscSearchConfig& cfg) {
  if (atlas.points.empty()) throw ValidationError("sup_hsc needs a nonempty atlas");
  Rng rng(cfg.seed);
  HscEstimate est;
  est.value = -std::numeric_limits<double>::infinity();
  est.points_sampled = static_cast<int>(atlas.points.size());
  est.restarts = cfg.restarts;

  Eigen::VectorXcd warm;
  bool have_warm = false;
  for (const auto& p : atlas.points) {
    CurvatureData curv = curvature_at(metric, p.z);
    Eigen::VectorXcd arg;
    const double q = max_hsc_at(curv, cfg, rng, &arg, have_warm ? &warm : nullptr);
    warm = arg;
    have_warm = true;
    if (q > est.value) {
      est.value = q;
      est.arg_point = p.z;
      // report the direction in chart coordinates, g-normalized
      Eigen::LLT<Eigen::MatrixXcd> llt(curv.g);
      Eigen::MatrixXcd L = llt.matrixL();
      est.arg_direction = L.adjoint()
                              .triangularView<Eigen::Upper>()
                              .solve(Eigen::MatrixXcd::Identity(curv.n, curv.n))
                              .conjugate() *
                          arg;
    }
  }
  return est;
}

}  // namespace klab
