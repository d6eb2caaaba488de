#pragma once

#include <string>
#include <vector>

#include "htype/spaces.hpp"

namespace htype {

/// Step-2 nilpotent Lie algebra H (+) V with scalar products on both factors
/// and structure tensor B, where [h_i, h_j] = sum_b B[b](i,j) v_b.
///
/// Coordinate conventions used throughout:
///   bracket(h, h')_b = h^T B^b h'
///   mu(v, .) acts on column coordinates as  sum_b v_b * (-eps_b J_H B^b),
///     solving <mu(v,h), h'>_H = <v, [h,h']>_V
///   A^b = eps_b B^b J_H is the coefficient matrix mu(v_b, h_i) = sum_j A^b_ij h_j.
///
/// Values are immutable after construction; every operation is reentrant.
struct HTypeAlgebra {
  ScalarSpace H;
  ScalarSpace V;
  std::vector<Mat> B;  // m skew-symmetric n x n slices
  std::string label = "custom";
  // Canonical-ordering bookkeeping for catalog algebras: entry k holds the
  // index of canonical basis vector k in the presentation basis.  Empty means
  // the presentation already was canonical.
  std::vector<int> h_order;
  std::vector<int> v_order;

  /// Validates shapes and rejects slices whose skew-symmetry defect exceeds
  /// 1e-14 (no silent repair).
  HTypeAlgebra(ScalarSpace H_, ScalarSpace V_, std::vector<Mat> B_,
               std::string label_ = "custom");

  int n() const { return H.dim; }
  int m() const { return V.dim; }
};

/// [h1, h2] in V-coordinates.
Vec bracket(const HTypeAlgebra& alg, const Vec& h1, const Vec& h2);

/// Matrix of ad_h : H -> V, rows indexed by V.
Mat ad_matrix(const HTypeAlgebra& alg, const Vec& h);

/// Matrix of mu(v, .) : H -> H acting on column coordinates.
Mat mu_operator(const HTypeAlgebra& alg, const Vec& v);

Vec mu(const HTypeAlgebra& alg, const Vec& v, const Vec& h);

/// Coefficient matrix A^b = eps_b B^b J_H.
Mat a_slice(const HTypeAlgebra& alg, int b);

struct ValidationCheck {
  std::string name;
  double max_residual = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct ValidationReport {
  bool passed = false;
  std::vector<ValidationCheck> checks;
  int sampled_vectors = 0;
  std::string label;
};

/// Decides whether the algebra is a general H-type algebra, i.e. whether it
/// arises from a composition of quadratic forms.  Checks, residual-reported:
///   (a) defining identity      <mu(v,h),h'>_H = <v,[h,h']>_V
///   (b) image identity         [h, mu(v,h)] = <h,h>_H v
///   (c) composition identity   <mu(v,h),mu(v',h)>_H = <v,v'>_V <h,h>_H
///   (d) (A^b)^2 = -eps_b I     (deterministic)
///   (e) (J_H B^b)^2 = -eps_b I (deterministic)
///   (f) J_H B^a J_H B^b + J_H B^b J_H B^a = 0 for a != b (deterministic)
///   (g) for sampled h with <h,h> = +-1: ad_h restricted to the scalar-product
///       complement of its kernel is onto V and an isometry or anti-isometry.
/// Throws on trials < 1 or tol <= 0.
ValidationReport validate_h_type(const HTypeAlgebra& alg, int trials = 256,
                                 double tol = 1e-9,
                                 std::uint64_t seed = 0x48545950u);

/// True iff no nonzero h in H is central: rank of the stacked structure
/// slices [B^1; ...; B^m] equals n.  (Every v in V is central by
/// construction.)  `trials` is accepted for interface symmetry; the decision
/// is the deterministic rank computation.
bool center_check(const HTypeAlgebra& alg, int trials = 256, double tol = 1e-9);

/// Kernel of ad_h as columns of an orthonormal matrix (SVD threshold
/// 1e-10 * sigma_max).
Mat ad_kernel(const HTypeAlgebra& alg, const Vec& h);

/// Scalar-product orthogonal complement of ker(ad_h); columns form a basis.
Mat ad_kernel_complement(const HTypeAlgebra& alg, const Vec& h);

}  // namespace htype
