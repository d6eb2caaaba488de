#include "htype/geodesics.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace htype {

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::ZeroTheta: return "ZeroTheta";
    case Regime::NullTheta: return "NullTheta";
    case Regime::NonNull: return "NonNull";
  }
  return "?";
}

GroupPoint group_identity(const HTypeAlgebra& alg) {
  return {Vec::Zero(alg.n()), Vec::Zero(alg.m())};
}

GroupPoint group_mul(const HTypeAlgebra& alg, const GroupPoint& g,
                     const GroupPoint& g2) {
  if (g.x.size() != alg.n() || g2.x.size() != alg.n() ||
      g.t.size() != alg.m() || g2.t.size() != alg.m())
    throw std::invalid_argument("group_mul: dimension mismatch");
  return {g.x + g2.x, g.t + g2.t + 0.5 * bracket(alg, g.x, g2.x)};
}

GroupPoint group_inverse(const HTypeAlgebra& alg, const GroupPoint& g) {
  if (g.x.size() != alg.n() || g.t.size() != alg.m())
    throw std::invalid_argument("group_inverse: dimension mismatch");
  return {-g.x, -g.t};
}

Mat left_frame(const HTypeAlgebra& alg, const GroupPoint& g) {
  const int n = alg.n();
  const int m = alg.m();
  Mat frame = Mat::Zero(n + m, n);
  frame.topRows(n) = Mat::Identity(n, n);
  for (int a = 0; a < m; ++a)
    frame.row(n + a) = 0.5 * (alg.B[a] * g.x).transpose();
  return frame;
}

double hamiltonian(const HTypeAlgebra& alg, const GroupPoint& g,
                   const Covector& lam) {
  if (lam.xi.size() != alg.n() || lam.theta.size() != alg.m())
    throw std::invalid_argument("hamiltonian: dimension mismatch");
  const Mat frame = left_frame(alg, g);
  double h = 0.0;
  for (int i = 0; i < alg.n(); ++i) {
    const double li =
        lam.xi.dot(frame.col(i).head(alg.n())) +
        lam.theta.dot(frame.col(i).tail(alg.m()));
    h += 0.5 * alg.H.sign(i) * li * li;
  }
  return h;
}

Mat omega(const HTypeAlgebra& alg, const Vec& theta) {
  if (theta.size() != alg.m())
    throw std::invalid_argument("omega: dimension mismatch");
  Mat om = Mat::Zero(alg.n(), alg.n());
  for (int a = 0; a < alg.m(); ++a)
    if (theta[a] != 0.0) om += theta[a] * alg.B[a];
  return om;
}

double theta2(const HTypeAlgebra& alg, const Vec& theta) {
  return alg.V.square(theta);
}

Regime classify_theta(const HTypeAlgebra& alg, const Vec& theta) {
  if (theta.isZero(0.0)) return Regime::ZeroTheta;
  const double t2 = theta2(alg, theta);
  if (std::abs(t2) <= 1e-14 * std::max(1.0, theta.squaredNorm()))
    return Regime::NullTheta;
  return Regime::NonNull;
}

Trajectory integrate_hamiltonian(const HTypeAlgebra& alg, const Vec& v0,
                                 const Vec& theta, double s_max, double dt) {
  if (v0.size() != alg.n() || theta.size() != alg.m())
    throw std::invalid_argument("integrate_hamiltonian: dimension mismatch");
  if (dt <= 0.0 || s_max <= 0.0)
    throw std::invalid_argument("integrate_hamiltonian: need dt > 0, s_max > 0");

  const int n = alg.n();
  const int m = alg.m();
  const Vec jh = alg.H.gram_diagonal();
  const Mat om = omega(alg, theta);

  // State y = (x, t, xi); theta is constant.
  const auto deriv = [&](const Vec& y, Vec& dy) {
    const auto x = y.head(n);
    const auto xi = y.segment(n + m, n);
    const Vec u = xi + 0.5 * (om * x);
    const Vec xdot = jh.cwiseProduct(u);
    dy.resize(2 * n + m);
    dy.head(n) = xdot;
    for (int a = 0; a < m; ++a) dy[n + a] = 0.5 * xdot.dot(alg.B[a] * x);
    dy.segment(n + m, n) = 0.5 * (om * xdot);
  };

  const int steps = static_cast<int>(std::llround(s_max / dt));
  Trajectory traj;
  traj.regime = classify_theta(alg, theta);
  traj.theta2 = theta2(alg, theta);
  traj.v0 = v0;
  traj.theta = theta;
  traj.s.reserve(steps + 1);
  traj.points.reserve(steps + 1);

  Vec y = Vec::Zero(2 * n + m);
  y.segment(n + m, n) = jh.cwiseProduct(v0);  // xi(0) = J_H v0, so xdot(0) = v0
  traj.s.push_back(0.0);
  traj.points.push_back(group_identity(alg));
  traj.xi.push_back(y.segment(n + m, n));

  Vec k1, k2, k3, k4, tmp;
  for (int step = 1; step <= steps; ++step) {
    deriv(y, k1);
    tmp = y + 0.5 * dt * k1;
    deriv(tmp, k2);
    tmp = y + 0.5 * dt * k2;
    deriv(tmp, k3);
    tmp = y + dt * k3;
    deriv(tmp, k4);
    y += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite())
      throw std::runtime_error("integrate_hamiltonian: non-finite state");
    traj.s.push_back(step * dt);
    traj.points.push_back({y.head(n), y.segment(n, m)});
    traj.xi.push_back(y.segment(n + m, n));
  }
  return traj;
}

Mat exp_jh_omega(const HTypeAlgebra& alg, const Vec& theta, double s) {
  const int n = alg.n();
  const Mat ident = Mat::Identity(n, n);
  const Regime regime = classify_theta(alg, theta);
  if (regime == Regime::ZeroTheta) return ident;

  const Mat k = alg.H.gram() * omega(alg, theta);
  if (regime == Regime::NullTheta) return ident + s * k;

  const double t2 = theta2(alg, theta);
  const double th = std::sqrt(std::abs(t2));
  if (t2 > 0.0)
    return std::cos(s * th) * ident + (std::sin(s * th) / th) * k;
  return std::cosh(s * th) * ident + (std::sinh(s * th) / th) * k;
}

Vec geodesic_velocity(const HTypeAlgebra& alg, const Vec& v0, const Vec& theta,
                      double s) {
  return exp_jh_omega(alg, theta, s) * v0;
}

Vec geodesic_x(const HTypeAlgebra& alg, const Vec& v0, const Vec& theta,
               double s) {
  const Regime regime = classify_theta(alg, theta);
  if (regime == Regime::ZeroTheta) return s * v0;

  const Mat k = alg.H.gram() * omega(alg, theta);
  if (regime == Regime::NullTheta) return s * v0 + (0.5 * s * s) * (k * v0);

  const double t2 = theta2(alg, theta);
  const double th = std::sqrt(std::abs(t2));
  if (t2 > 0.0)
    return (std::sin(s * th) / th) * v0 +
           ((1.0 - std::cos(s * th)) / t2) * (k * v0);
  return (std::sinh(s * th) / th) * v0 +
         ((std::cosh(s * th) - 1.0) / -t2) * (k * v0);
}

Vec null_theta_t_quartic(const HTypeAlgebra& alg, const Vec& v0,
                         const Vec& theta, double s) {
  const Mat k = alg.H.gram() * omega(alg, theta);
  const Vec kv = k * v0;
  Vec t(alg.m());
  for (int a = 0; a < alg.m(); ++a) {
    const double c2 = v0.dot(alg.B[a] * v0);
    const double c3 = v0.dot(alg.B[a] * kv);
    const double c4 = kv.dot(alg.B[a] * kv);
    t[a] = (s * s / 4.0) * c2 - (s * s * s / 12.0) * c3 +
           (s * s * s * s / 16.0) * c4;
  }
  return t;
}

namespace {

// Adaptive 15-point Gauss-Legendre on [a,b]: bisect until the whole-interval
// estimate agrees with the sum of the halves within abs_tol.
const double kGlNodes[15] = {
    -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
    -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
    -0.2011940939974345, 0.0,                 0.2011940939974345,
    0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
    0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
const double kGlWeights[15] = {
    0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
    0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
    0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
    0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
    0.1071592204671719, 0.0703660474881081, 0.0307532419961173};

Vec gl15(const std::function<Vec(double)>& f, double a, double b) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Vec acc = kGlWeights[0] * f(mid + half * kGlNodes[0]);
  for (int i = 1; i < 15; ++i) acc += kGlWeights[i] * f(mid + half * kGlNodes[i]);
  return half * acc;
}

Vec integrate_adaptive(const std::function<Vec(double)>& f, double a, double b,
                       double abs_tol, int depth = 0) {
  const Vec whole = gl15(f, a, b);
  if (b - a <= 0.0) return whole;
  const double mid = 0.5 * (a + b);
  const Vec halves = gl15(f, a, mid) + gl15(f, mid, b);
  if ((whole - halves).cwiseAbs().maxCoeff() <= abs_tol || depth >= 30)
    return halves;
  return integrate_adaptive(f, a, mid, 0.5 * abs_tol, depth + 1) +
         integrate_adaptive(f, mid, b, 0.5 * abs_tol, depth + 1);
}

}  // namespace

Trajectory geodesic_closed_form(const HTypeAlgebra& alg, const Vec& v0,
                                const Vec& theta,
                                const std::vector<double>& s_values) {
  if (v0.size() != alg.n() || theta.size() != alg.m())
    throw std::invalid_argument("geodesic_closed_form: dimension mismatch");
  for (std::size_t i = 0; i < s_values.size(); ++i) {
    if (s_values[i] < 0.0)
      throw std::invalid_argument("geodesic_closed_form: s must be >= 0");
    if (i > 0 && s_values[i] <= s_values[i - 1])
      throw std::invalid_argument("geodesic_closed_form: s must be increasing");
  }

  Trajectory traj;
  traj.regime = classify_theta(alg, theta);
  traj.theta2 = theta2(alg, theta);
  traj.v0 = v0;
  traj.theta = theta;

  std::vector<double> grid;
  if (s_values.empty() || s_values.front() > 0.0) grid.push_back(0.0);
  grid.insert(grid.end(), s_values.begin(), s_values.end());

  const auto tdot = [&](double s) {
    const Vec xdot = geodesic_velocity(alg, v0, theta, s);
    const Vec x = geodesic_x(alg, v0, theta, s);
    Vec out(alg.m());
    for (int a = 0; a < alg.m(); ++a) out[a] = 0.5 * xdot.dot(alg.B[a] * x);
    return out;
  };

  Vec t_acc = Vec::Zero(alg.m());
  double s_prev = 0.0;
  for (double s : grid) {
    if (traj.regime == Regime::ZeroTheta) {
      traj.points.push_back({s * v0, Vec::Zero(alg.m())});
    } else {
      if (s > s_prev) t_acc += integrate_adaptive(tdot, s_prev, s, 1e-10);
      traj.points.push_back({geodesic_x(alg, v0, theta, s), t_acc});
    }
    traj.s.push_back(s);
    s_prev = s;
  }
  return traj;
}

Covector covector_along(const HTypeAlgebra& alg, const Vec& v0,
                        const Vec& theta, double s) {
  const Vec xdot = geodesic_velocity(alg, v0, theta, s);
  const Vec x = geodesic_x(alg, v0, theta, s);
  const Vec xi = alg.H.gram_diagonal().cwiseProduct(xdot) -
                 0.5 * (omega(alg, theta) * x);
  return {xi, theta};
}

}  // namespace htype
