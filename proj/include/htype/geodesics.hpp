#pragma once

#include <vector>

#include "htype/algebra.hpp"

namespace htype {

/// Exponential (normal) coordinates (x, t) of a group element.
struct GroupPoint {
  Vec x;
  Vec t;
};

/// Momenta (xi, theta) of the Hamiltonian system; theta is constant along
/// every geodesic.
struct Covector {
  Vec xi;
  Vec theta;
};

enum class Regime { ZeroTheta, NullTheta, NonNull };

const char* regime_name(Regime r);

struct Trajectory {
  std::vector<double> s;           // strictly increasing, s[0] = 0
  std::vector<GroupPoint> points;  // points[0] = origin
  std::vector<Vec> xi;             // momenta along RK4 runs (empty otherwise)
  Regime regime = Regime::ZeroTheta;
  double theta2 = 0.0;
  Vec v0;
  Vec theta;
};

GroupPoint group_identity(const HTypeAlgebra& alg);

/// BCH product (x,t)(x',t') = (x + x', t + t' + 1/2 [x, x']).
GroupPoint group_mul(const HTypeAlgebra& alg, const GroupPoint& g,
                     const GroupPoint& g2);

GroupPoint group_inverse(const HTypeAlgebra& alg, const GroupPoint& g);

/// Left-invariant horizontal frame at g as an (n+m) x n matrix; column i is
/// X_i(g) = d/dx_i + 1/2 sum_a (B^a x)_i d/dt_a.
Mat left_frame(const HTypeAlgebra& alg, const GroupPoint& g);

/// Metric Hamiltonian  -1/2 sum_{i<=nu} lambda(X_i)^2 + 1/2 sum_{i>nu} lambda(X_i)^2
///                   =  1/2 (xi + 1/2 Omega x)^T J_H (xi + 1/2 Omega x).
double hamiltonian(const HTypeAlgebra& alg, const GroupPoint& g,
                   const Covector& lam);

/// Omega(theta) = sum_a theta_a B^a (skew-symmetric).
Mat omega(const HTypeAlgebra& alg, const Vec& theta);

/// Signed square norm Theta^2 = sum_a eps_a theta_a^2.
double theta2(const HTypeAlgebra& alg, const Vec& theta);

/// ZeroTheta if theta = 0; NullTheta if theta != 0 and Theta^2 vanishes
/// within 1e-14 * max(1, |theta|^2); NonNull otherwise.
Regime classify_theta(const HTypeAlgebra& alg, const Vec& theta);

/// Classical RK4 over the full Hamiltonian system
///   xdot = J_H(xi + 1/2 Omega x),  tdot_a = 1/2 xdot^T B^a x,
///   xidot = 1/2 Omega xdot,        thetadot = 0,
/// from x = t = 0, xi = J_H v0 (so xdot(0) = v0).  Samples every dt.
/// This is the oracle the closed-form solver is checked against.
/// Throws std::runtime_error if the state leaves the finite range.
Trajectory integrate_hamiltonian(const HTypeAlgebra& alg, const Vec& v0,
                                 const Vec& theta, double s_max, double dt);

/// Closed-form exp(s J_H Omega), split by regime: identity for theta = 0,
/// I + s J_H Omega when Theta^2 = 0, and the trigonometric/hyperbolic pair
/// cos(s Th) I + sin(s Th)/Th J_H Omega  (Theta^2 > 0)
/// cosh(s Th) I + sinh(s Th)/Th J_H Omega (Theta^2 < 0),  Th = sqrt|Theta^2|,
/// which is what the series decomposition of (J_H Omega)^2 = -Theta^2 I gives.
Mat exp_jh_omega(const HTypeAlgebra& alg, const Vec& theta, double s);

/// Horizontal velocity xdot(s) = exp(s J_H Omega) v0.
Vec geodesic_velocity(const HTypeAlgebra& alg, const Vec& v0, const Vec& theta,
                      double s);

/// Closed-form x(s) (integral of the velocity).
Vec geodesic_x(const HTypeAlgebra& alg, const Vec& v0, const Vec& theta,
               double s);

/// Closed quartic t(s) valid in the NullTheta regime:
///   t_a(s) = s^2/4 v0^T B^a v0 - s^3/12 v0^T B^a K v0
///          + s^4/16 (K v0)^T B^a (K v0),   K = J_H Omega.
Vec null_theta_t_quartic(const HTypeAlgebra& alg, const Vec& v0,
                         const Vec& theta, double s);

/// Closed-form geodesic through the origin with horizontal velocity v0 and
/// vertical co-vector theta, sampled at the given non-negative, strictly
/// increasing parameter values (0 is prepended if absent).  The vertical
/// coordinates are obtained by adaptive Gauss-Legendre quadrature of the
/// horizontality condition tdot_a = 1/2 xdot^T B^a x (absolute tolerance
/// 1e-10 per interval).
Trajectory geodesic_closed_form(const HTypeAlgebra& alg, const Vec& v0,
                                const Vec& theta,
                                const std::vector<double>& s_values);

/// Covector along the closed-form geodesic: xi(s) = J_H xdot - 1/2 Omega x.
Covector covector_along(const HTypeAlgebra& alg, const Vec& v0,
                        const Vec& theta, double s);

}  // namespace htype
