#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "htype/algebra.hpp"

namespace htype {

/// A non-degenerate quadratic form is represented by its scalar-product
/// space: the form is x -> space.square(x) in the canonical signed basis.
using QuadraticForm = ScalarSpace;

/// Bilinear map mu : U x H -> H given by coefficient slices
///   mu(u_k, h_i) = sum_j M[k](i, j) h_j,
/// so mu(u_k, .) acts on column coordinates as M[k]^T.  Both spaces are in
/// canonical signed order.  A normalized map has M[u0_index] = Id and
/// |lambda(u_0)| = 1; u0_index = -1 marks an unnormalized map.
struct CompositionMap {
  ScalarSpace U;
  ScalarSpace H;
  std::vector<Mat> M;
  int u0_index = -1;

  CompositionMap(ScalarSpace U_, ScalarSpace H_, std::vector<Mat> M_,
                 int u0_index_);

  Mat mu_operator(const Vec& u) const;
  Vec mu(const Vec& u, const Vec& h) const;
};

/// Largest relative residual of phi(mu(u,h)) = lambda(u) phi(h) and of the
/// polarized identity <mu(u,h),mu(u',h)>_phi = <u,u'>_lambda <h,h>_phi over
/// sampled tuples.
double composition_residual(const CompositionMap& map, int trials = 256,
                            std::uint64_t seed = 0x434f4d50u);

bool verify_composition(const CompositionMap& map, int trials = 256,
                        double tol = 1e-10, std::uint64_t seed = 0x434f4d50u);

/// Phi(h, h2) in U-coordinates, solving <u, Phi(h,h2)>_lambda = <mu(u,h),h2>_phi
/// against the orthonormal U basis: Phi_k = eps_k <mu(u_k,h),h2>_phi.
Vec phi_map(const CompositionMap& map, const Vec& h, const Vec& h2);

/// Forward direction of the structure theorem: the step-2 algebra on
/// H (+) V, V = span{u_0}^perp, with brackets [h,h'] = pi.Phi(h,h').
/// Throws if the map is unnormalized, fails the composition check, or has
/// dim U < 2.
HTypeAlgebra algebra_from_composition(const CompositionMap& map,
                                      const std::string& label = "custom");

/// Converse direction: extends mu(v,.) = A-slices by the identity slot on
/// U = V (+) span{u_0}.  u0_sign picks the declared sign of the u_0 slot;
/// only +1 yields a verifiable composition (lambda(u_0) must be +1 for a
/// normalized map).  Throws if the algebra fails validate_h_type.
CompositionMap composition_from_algebra(const HTypeAlgebra& alg, int u0_sign = 1);

struct CatalogEntry {
  HTypeAlgebra algebra;
  CompositionMap witness;
};

/// Catalog families:
///   heis        H^{2n,0,1}   heis_split  H^{2n,n,1}
///   quat        H^{4n,0,3}   quat_split  H^{4n,2n,3}
/// Throws on unknown name or n < 1.
CatalogEntry catalog(const std::string& name, int n);

/// The R^2 x R^2 example map mu_a(u,h) = (y1 x1 + a y2 x2, y1 x2 - y2 x1)
/// with phi_a = lambda_a = x1^2 + a x2^2, expressed in canonical order.
/// a must be +1 or -1 (a = 0 is degenerate and rejected).
CompositionMap composition_r2(int a);

/// The quaternion-type map on R^4 x R^4 for phi = lambda =
/// x1^2 + a x2^2 + b x3^2 + ab x4^2, a, b in {+1,-1}; blocks extend to
/// H = R^{4n}.
CompositionMap composition_quaternionic(int a, int b, int blocks = 1);

struct SearchOutcome {
  bool found = false;
  double residual = 0.0;  // best sum of squared coefficient-equation residuals
  std::array<double, 8> coefficients{};
  std::optional<CompositionMap> map;  // normalized map when found
  bool contradiction = false;  // exact nonexistence proof applies to this pair
  std::string note;
};

/// Multistart damped Gauss-Newton over the 8 coefficients of a bilinear map
/// R^2 x R^2 -> R^2, minimizing the sum of squared residuals of the
/// coefficient equations that phi(mu(u,h)) = lambda(u) phi(h) imposes for the
/// requested signatures.  Never throws: the result is a verdict.
SearchOutcome search_composition_2d(int phi_index, int lambda_index,
                                    int restarts, std::uint64_t seed);

}  // namespace htype
