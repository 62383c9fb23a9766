#include "klab/ansatz.hpp"

#include <cmath>

#include "klab/curvature.hpp"

namespace klab {

namespace {

// Fourth-order stencils. One-sided rows are used on non-periodic grids.
const double kD1Central[5] = {1.0 / 12, -8.0 / 12, 0.0, 8.0 / 12, -1.0 / 12};
const double kD2Central[5] = {-1.0 / 12, 16.0 / 12, -30.0 / 12, 16.0 / 12, -1.0 / 12};
const double kD1Edge0[5] = {-25.0 / 12, 48.0 / 12, -36.0 / 12, 16.0 / 12, -3.0 / 12};
const double kD1Edge1[5] = {-3.0 / 12, -10.0 / 12, 18.0 / 12, -6.0 / 12, 1.0 / 12};
const double kD2Edge0[6] = {45.0 / 12, -154.0 / 12, 214.0 / 12, -156.0 / 12, 61.0 / 12,
                            -10.0 / 12};
const double kD2Edge1[6] = {10.0 / 12, -15.0 / 12, -4.0 / 12, 14.0 / 12, -6.0 / 12, 1.0 / 12};

Grid apply_periodic(const Grid& f, const double* stencil, double scale) {
  const int N = static_cast<int>(f.size());
  Grid out(N);
  for (int i = 0; i < N; ++i) {
    double acc = 0.0;
    for (int k = -2; k <= 2; ++k) acc += stencil[k + 2] * f((i + k + N) % N);
    out(i) = acc * scale;
  }
  return out;
}

Grid apply_bounded_d1(const Grid& f, double inv_h) {
  const int N = static_cast<int>(f.size());
  Grid out(N);
  for (int i = 2; i < N - 2; ++i) {
    double acc = 0.0;
    for (int k = -2; k <= 2; ++k) acc += kD1Central[k + 2] * f(i + k);
    out(i) = acc * inv_h;
  }
  auto edge = [&](int row, const double* st, int base, int dir, double sign) {
    double acc = 0.0;
    for (int k = 0; k < 5; ++k) acc += st[k] * f(base + dir * k);
    out(row) = sign * acc * inv_h;
  };
  edge(0, kD1Edge0, 0, 1, 1.0);
  edge(1, kD1Edge1, 0, 1, 1.0);
  edge(N - 1, kD1Edge0, N - 1, -1, -1.0);
  edge(N - 2, kD1Edge1, N - 1, -1, -1.0);
  return out;
}

Grid apply_bounded_d2(const Grid& f, double inv_h2) {
  const int N = static_cast<int>(f.size());
  Grid out(N);
  for (int i = 2; i < N - 2; ++i) {
    double acc = 0.0;
    for (int k = -2; k <= 2; ++k) acc += kD2Central[k + 2] * f(i + k);
    out(i) = acc * inv_h2;
  }
  auto edge = [&](int row, const double* st, int base, int dir) {
    double acc = 0.0;
    for (int k = 0; k < 6; ++k) acc += st[k] * f(base + dir * k);
    out(row) = acc * inv_h2;
  };
  edge(0, kD2Edge0, 0, 1);
  edge(1, kD2Edge1, 0, 1);
  edge(N - 1, kD2Edge0, N - 1, -1);
  edge(N - 2, kD2Edge1, N - 1, -1);
  return out;
}

void fill_row(Eigen::MatrixXd& M, int row, int base, int dir, const double* st, int len,
              double scale) {
  for (int k = 0; k < len; ++k) M(row, base + dir * k) += scale * st[k];
}

}  // namespace

Ansatz::Ansatz(Kind k, ManifoldSpec spec, int nodes) : kind_(k), spec_(std::move(spec)), N_(nodes) {
  if (N_ < 16) throw ValidationError("ansatz grid needs at least 16 nodes");
  coord_.resize(N_);
  if (kind_ == Kind::TorusLine) {
    const double P = spec_.periods[0][0];
    h_ = P / N_;
    for (int i = 0; i < N_; ++i) coord_(i) = i * h_;
    node_vol_ = h_ * spec_.periods[0][1];
    for (int c = 1; c < spec_.dim; ++c) node_vol_ *= spec_.periods[c][0] * spec_.periods[c][1];
  } else {
    h_ = 1.0 / N_;
    for (int i = 0; i < N_; ++i) coord_(i) = (i + 0.5) * h_;
  }
}

Ansatz Ansatz::torus_line(const ManifoldSpec& spec, int nodes) {
  if (spec.kind != ModelKind::Torus) throw ValidationError("torus line ansatz needs a torus");
  return Ansatz(Kind::TorusLine, spec, nodes);
}

Ansatz Ansatz::radial(const ManifoldSpec& spec, int nodes) {
  if (spec.kind != ModelKind::Projective || spec.dim != 1)
    throw ValidationError("radial ansatz is implemented on projective(1)");
  return Ansatz(Kind::Radial, spec, nodes);
}

Point Ansatz::embed(int i) const {
  Point z(spec_.dim, cplx(0.0));
  if (kind_ == Kind::TorusLine) {
    z[0] = cplx(coord_(i), 0.0);
    for (int c = 1; c < spec_.dim; ++c) z[c] = cplx(0.0, 0.0);
  } else {
    const double u = coord_(i);
    z[0] = cplx(std::sqrt(u / (1.0 - u)), 0.0);
  }
  return z;
}

Grid Ansatz::d1(const Grid& f) const {
  return kind_ == Kind::TorusLine ? apply_periodic(f, kD1Central, 1.0 / h_)
                                  : apply_bounded_d1(f, 1.0 / h_);
}

Grid Ansatz::d2(const Grid& f) const {
  return kind_ == Kind::TorusLine ? apply_periodic(f, kD2Central, 1.0 / (h_ * h_))
                                  : apply_bounded_d2(f, 1.0 / (h_ * h_));
}

Grid Ansatz::hessian(const Grid& phi) const {
  if (kind_ == Kind::TorusLine) return 0.25 * d2(phi);
  const Grid du = d1(phi), duu = d2(phi);
  Grid out(N_);
  for (int i = 0; i < N_; ++i) {
    const double u = coord_(i), om = 1.0 - u;
    out(i) = om * om * ((1.0 - 2.0 * u) * du(i) + u * om * duu(i));
  }
  return out;
}

Eigen::MatrixXd Ansatz::hessian_matrix() const {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(N_, N_);
  if (kind_ == Kind::TorusLine) {
    const double s = 0.25 / (h_ * h_);
    for (int i = 0; i < N_; ++i)
      for (int k = -2; k <= 2; ++k) M(i, (i + k + N_) % N_) += s * kD2Central[k + 2];
    return M;
  }
  Eigen::MatrixXd D1 = Eigen::MatrixXd::Zero(N_, N_), D2 = Eigen::MatrixXd::Zero(N_, N_);
  const double ih = 1.0 / h_, ih2 = ih * ih;
  for (int i = 2; i < N_ - 2; ++i)
    for (int k = -2; k <= 2; ++k) {
      D1(i, i + k) += ih * kD1Central[k + 2];
      D2(i, i + k) += ih2 * kD2Central[k + 2];
    }
  fill_row(D1, 0, 0, 1, kD1Edge0, 5, ih);
  fill_row(D1, 1, 0, 1, kD1Edge1, 5, ih);
  fill_row(D1, N_ - 1, N_ - 1, -1, kD1Edge0, 5, -ih);
  fill_row(D1, N_ - 2, N_ - 1, -1, kD1Edge1, 5, -ih);
  fill_row(D2, 0, 0, 1, kD2Edge0, 6, ih2);
  fill_row(D2, 1, 0, 1, kD2Edge1, 6, ih2);
  fill_row(D2, N_ - 1, N_ - 1, -1, kD2Edge0, 6, ih2);
  fill_row(D2, N_ - 2, N_ - 1, -1, kD2Edge1, 6, ih2);
  for (int i = 0; i < N_; ++i) {
    const double u = coord_(i), om = 1.0 - u;
    M.row(i) = om * om * ((1.0 - 2.0 * u) * D1.row(i) + u * om * D2.row(i));
  }
  return M;
}

Grid Ansatz::ricci_from_metric(const Grid& g_act) const {
  for (int i = 0; i < N_; ++i)
    if (g_act(i) <= 0.0) throw NumericalError("metric entry nonpositive at grid node");
  if (kind_ == Kind::TorusLine) {
    Grid logg = g_act.array().log();
    return -0.25 * d2(logg);
  }
  Grid q(N_);
  for (int i = 0; i < N_; ++i) q(i) = std::log(g_act(i)) - 2.0 * std::log(1.0 - coord_(i));
  const Grid qu = d1(q), quu = d2(q);
  Grid out(N_);
  for (int i = 0; i < N_; ++i) {
    const double u = coord_(i), om = 1.0 - u;
    out(i) = om * om * (2.0 - (1.0 - 2.0 * u) * qu(i) - u * om * quu(i));
  }
  return out;
}

Grid Ansatz::laplacian(const Grid& g_act, const Grid& f) const {
  return hessian(f).cwiseQuotient(g_act);
}

double Ansatz::integrate(const Grid& F, const Grid& g_act,
                         const std::vector<double>& passive) const {
  const int n = spec_.dim;
  KahanSum acc;
  if (kind_ == Kind::TorusLine) {
    double pass = 1.0;
    for (double p : passive) pass *= p;
    const double factor = factorial(n) * std::pow(2.0, n) * pass * node_vol_;
    for (int i = 0; i < N_; ++i) acc.add(F(i) * g_act(i) * factor);
    return acc.value();
  }
  for (int i = 0; i < N_; ++i) {
    const double om = 1.0 - coord_(i);
    acc.add(F(i) * g_act(i) / (om * om) * (kTwoPi * h_));
  }
  return acc.value();
}

ReducedMetric Ansatz::reduce(const MetricField& metric) const {
  if (metric.dim() != spec_.dim) throw ValidationError("metric dimension mismatch for ansatz");
  ReducedMetric red;
  red.g_act.resize(N_);
  red.ric_act.resize(N_);
  const int n = spec_.dim;
  for (int i = 0; i < N_; ++i) {
    const Point z = embed(i);
    const CurvatureData curv = curvature_at(metric, z);
    red.g_act(i) = curv.g(0, 0).real();
    red.ric_act(i) = curv.ricci(0, 0).real();
    if (i == 0) {
      for (int c = 1; c < n; ++c) red.passive.push_back(curv.g(c, c).real());
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (a != b && std::abs(curv.g(a, b)) > 1e-10)
            throw ValidationError("metric does not reduce to the ansatz (off-diagonal entry)");
    }
  }
  if (kind_ == Kind::TorusLine) {
    // the reduction requires invariance along the inactive directions
    Point z = embed(N_ / 3);
    z[0] += cplx(0.0, 0.31 * spec_.periods[0][1]);
    const Eigen::MatrixXcd g_shift = metric.metric(z);
    if (std::abs(g_shift(0, 0).real() - metric.metric(embed(N_ / 3))(0, 0).real()) > 1e-10)
      throw ValidationError("metric varies along an inactive direction of the ansatz");
  }
  return red;
}

std::string Ansatz::describe() const {
  return kind_ == Kind::TorusLine ? "torus-line(" + std::to_string(N_) + ")"
                                  : "radial(" + std::to_string(N_) + ")";
}

}  // namespace klab
