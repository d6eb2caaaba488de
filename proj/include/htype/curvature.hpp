#pragma once

#include "htype/algebra.hpp"

namespace htype {

/// Left-invariant vector field identified with its Lie-algebra value.
struct TangentElement {
  Vec h;
  Vec v;
};

TangentElement tangent_zero(const HTypeAlgebra& alg);

/// <A,B> = <h,h'>_H + <v,v'>_V.
double tangent_product(const HTypeAlgebra& alg, const TangentElement& a,
                       const TangentElement& b);

/// Levi-Civita connection on left-invariant fields:
///   nabla_{h1} h2 = 1/2 [h1,h2],  nabla_v h = nabla_h v = -1/2 mu(v,h),
///   nabla_{v1} v2 = 0,
/// extended bilinearly.
TangentElement covariant_derivative(const HTypeAlgebra& alg,
                                    const TangentElement& a,
                                    const TangentElement& b);

/// R(X,Y)Z = (nabla_X nabla_Y - nabla_Y nabla_X - nabla_{[X,Y]}) Z, computed
/// from the definition (the closed-form cases live in the tests).
TangentElement curvature_endomorphism(const HTypeAlgebra& alg,
                                      const TangentElement& x,
                                      const TangentElement& y,
                                      const TangentElement& z);

struct Plane {
  TangentElement a;
  TangentElement b;
  double discriminant = 0.0;  // |a|^2 |b|^2 - <a,b>^2
};

Plane make_plane(const HTypeAlgebra& alg, const TangentElement& a,
                 const TangentElement& b);

bool plane_degenerate(const Plane& p);

/// k(P) = <R(a,b)a, b> / discriminant.  Throws std::domain_error on a
/// degenerate plane (relative threshold 1e-12).
double sectional_curvature(const HTypeAlgebra& alg, const Plane& p);

enum class PlaneKind { Stable, Abelian, Generic, Mixed, Vertical, Degenerate };

const char* plane_kind_name(PlaneKind k);

struct PlaneClassification {
  PlaneKind kind = PlaneKind::Generic;
  // Set when both basis vectors of a horizontal plane are null, so the
  // constructed stability witness v = [h1,h2]/<h1,h1> is unavailable.
  bool null_basis_caveat = false;
};

/// Horizontal planes are stable iff mu(v,.) maps the plane into itself for
/// the witness v = [h1,h2]/<h1,h1> (falling back to an exact linear solve
/// over V for m <= 3), abelian iff the basis vectors commute.
PlaneClassification classify_plane(const HTypeAlgebra& alg, const Plane& p);

struct RicciResult {
  Mat direct;        // metric-trace contraction of the curvature tensor
  Mat closed_form;   // diag(-(m/2) J_H, (n/4) J_V)
  Mat sign_sum_form;    // diag(-1/2 sum_a eps_a J_H, 1/4 sum_i eps_i J_V)
  double max_dev_closed = 0.0;
  double max_dev_sign_sum = 0.0;
  bool h_type_consistent = false;  // direct agrees with closed_form to 1e-8
};

/// Ric(e_a, e_b) = sum_c eps_c <R(e_c, e_a) e_b, e_c> over the full signed
/// orthonormal basis, returned together with the closed forms it is checked
/// against.  A deviation from the closed form above 1e-8 flags an algebra
/// that is not general H-type.
RicciResult ricci_tensor(const HTypeAlgebra& alg);

struct ScalarResult {
  double trace = 0.0;       // metric trace of the direct Ricci tensor
  double formula = 0.0;     // -1/4 (sum_a eps_a)(sum_i eps_i)
  double dimension_formula = 0.0;  // -(m n)/4, the signature-free value
  bool formula_matches = false;    // |trace - formula| <= 1e-10
};

ScalarResult scalar_curvature(const HTypeAlgebra& alg);

}  // namespace htype
