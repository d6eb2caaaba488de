#include "htype/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace htype {

TangentElement tangent_zero(const HTypeAlgebra& alg) {
  return {Vec::Zero(alg.n()), Vec::Zero(alg.m())};
}

double tangent_product(const HTypeAlgebra& alg, const TangentElement& a,
                       const TangentElement& b) {
  return alg.H.product(a.h, b.h) + alg.V.product(a.v, b.v);
}

TangentElement covariant_derivative(const HTypeAlgebra& alg,
                                    const TangentElement& a,
                                    const TangentElement& b) {
  if (a.h.size() != alg.n() || b.h.size() != alg.n() ||
      a.v.size() != alg.m() || b.v.size() != alg.m())
    throw std::invalid_argument("covariant_derivative: dimension mismatch");
  TangentElement out;
  out.h = -0.5 * (mu(alg, a.v, b.h) + mu(alg, b.v, a.h));
  out.v = 0.5 * bracket(alg, a.h, b.h);
  return out;
}

TangentElement curvature_endomorphism(const HTypeAlgebra& alg,
                                      const TangentElement& x,
                                      const TangentElement& y,
                                      const TangentElement& z) {
  const TangentElement nyz = covariant_derivative(alg, y, z);
  const TangentElement nxz = covariant_derivative(alg, x, z);
  const TangentElement nxnyz = covariant_derivative(alg, x, nyz);
  const TangentElement nynxz = covariant_derivative(alg, y, nxz);
  // [X,Y] of left-invariant fields is the algebra bracket: vertical, from the
  // horizontal parts only.
  const TangentElement xy_bracket{Vec::Zero(alg.n()), bracket(alg, x.h, y.h)};
  const TangentElement nbz = covariant_derivative(alg, xy_bracket, z);
  return {nxnyz.h - nynxz.h - nbz.h, nxnyz.v - nynxz.v - nbz.v};
}

Plane make_plane(const HTypeAlgebra& alg, const TangentElement& a,
                 const TangentElement& b) {
  Plane p{a, b, 0.0};
  const double aa = tangent_product(alg, a, a);
  const double bb = tangent_product(alg, b, b);
  const double ab = tangent_product(alg, a, b);
  p.discriminant = aa * bb - ab * ab;
  return p;
}

namespace {

double euclidean_sq(const TangentElement& a) {
  return a.h.squaredNorm() + a.v.squaredNorm();
}

double degeneracy_threshold(const Plane& p) {
  return 1e-12 * std::max(1.0, euclidean_sq(p.a) * euclidean_sq(p.b));
}

}  // namespace

bool plane_degenerate(const Plane& p) {
  return std::abs(p.discriminant) < degeneracy_threshold(p);
}

double sectional_curvature(const HTypeAlgebra& alg, const Plane& p) {
  if (plane_degenerate(p))
    throw std::domain_error("sectional_curvature: degenerate plane");
  const TangentElement raba = curvature_endomorphism(alg, p.a, p.b, p.a);
  return tangent_product(alg, raba, p.b) / p.discriminant;
}

const char* plane_kind_name(PlaneKind k) {
  switch (k) {
    case PlaneKind::Stable: return "stable";
    case PlaneKind::Abelian: return "abelian";
    case PlaneKind::Generic: return "generic";
    case PlaneKind::Mixed: return "mixed";
    case PlaneKind::Vertical: return "vertical";
    case PlaneKind::Degenerate: return "degenerate";
  }
  return "?";
}

namespace {

int rank_of(const Mat& m, double rel = 1e-10) {
  if (m.rows() == 0 || m.cols() == 0) return 0;
  Eigen::JacobiSVD<Mat> svd(m);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv[0] : 0.0) * rel;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank;
}

// |projection of w off span{a,b}|, Euclidean, for the mu-invariance test.
double off_plane_residual(const Vec& w, const Vec& a, const Vec& b) {
  Mat basis(a.size(), 2);
  basis.col(0) = a;
  basis.col(1) = b;
  const Vec coeff = basis.colPivHouseholderQr().solve(w);
  return (w - basis * coeff).cwiseAbs().maxCoeff();
}

bool mu_stabilizes(const HTypeAlgebra& alg, const Vec& v, const Vec& a,
                   const Vec& b, double tol) {
  const Mat op = mu_operator(alg, v);
  const double scale = std::max(1.0, v.cwiseAbs().maxCoeff());
  return off_plane_residual(op * a, a, b) <= tol * scale &&
         off_plane_residual(op * b, a, b) <= tol * scale;
}

// Exact fallback: the set {v : mu(v, P) subset P} is a linear subspace of V;
// P is stable iff it contains a non-null vector.
bool stable_by_linear_solve(const HTypeAlgebra& alg, const Vec& a, const Vec& b) {
  const int n = alg.n();
  const int m = alg.m();
  // Complement of span{a,b}: rows of C annihilate the plane (Euclidean).
  Mat basis(n, 2);
  basis.col(0) = a;
  basis.col(1) = b;
  Eigen::JacobiSVD<Mat> svd(basis, Eigen::ComputeFullU);
  const Mat compl_basis = svd.matrixU().rightCols(n - 2);  // n x (n-2)
  // Constraint matrix: for each v-basis direction, the off-plane components
  // of mu(v_b, a) and mu(v_b, b).
  Mat constraints(2 * (n - 2), m);
  for (int bidx = 0; bidx < m; ++bidx) {
    Vec vb = Vec::Zero(m);
    vb[bidx] = 1.0;
    const Mat op = mu_operator(alg, vb);
    constraints.col(bidx).head(n - 2) = compl_basis.transpose() * (op * a);
    constraints.col(bidx).tail(n - 2) = compl_basis.transpose() * (op * b);
  }
  Eigen::JacobiSVD<Mat> csvd(constraints, Eigen::ComputeFullV);
  const auto& sv = csvd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv[0] : 0.0) * 1e-10;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  const int null_dim = m - rank;
  if (null_dim == 0) return false;
  const Mat stabilizers = csvd.matrixV().rightCols(null_dim);
  // Non-null vector exists iff the restricted V-form is not identically zero.
  for (int i = 0; i < null_dim; ++i)
    for (int j = 0; j < null_dim; ++j)
      if (std::abs(alg.V.product(stabilizers.col(i), stabilizers.col(j))) >
          1e-10)
        return true;
  return false;
}

}  // namespace

PlaneClassification classify_plane(const HTypeAlgebra& alg, const Plane& p) {
  PlaneClassification out;
  if (plane_degenerate(p)) {
    out.kind = PlaneKind::Degenerate;
    return out;
  }

  Mat hparts(alg.n(), 2), vparts(alg.m(), 2);
  hparts.col(0) = p.a.h;
  hparts.col(1) = p.b.h;
  vparts.col(0) = p.a.v;
  vparts.col(1) = p.b.v;
  const int hrank = rank_of(hparts);
  const int vrank = rank_of(vparts);

  if (hrank == 0) {
    out.kind = PlaneKind::Vertical;
    return out;
  }
  if (vrank == 0) {
    // Horizontal plane: abelian / stable / generic.
    const Vec& a = p.a.h;
    const Vec& b = p.b.h;
    const Vec br = bracket(alg, a, b);
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff() *
                                           b.cwiseAbs().maxCoeff());
    if (br.cwiseAbs().maxCoeff() <= 1e-12 * scale) {
      out.kind = PlaneKind::Abelian;
      return out;
    }
    const double qa = alg.H.square(a);
    const double qb = alg.H.square(b);
    if (std::abs(qa) > 1e-10 || std::abs(qb) > 1e-10) {
      const Vec lead = std::abs(qa) > 1e-10 ? a : b;
      const Vec other = std::abs(qa) > 1e-10 ? b : a;
      const Vec v = bracket(alg, lead, other) / alg.H.square(lead);
      if (std::abs(alg.V.square(v)) > 1e-10 &&
          mu_stabilizes(alg, v, a, b, 1e-10)) {
        out.kind = PlaneKind::Stable;
        return out;
      }
    } else {
      out.null_basis_caveat = true;
    }
    if (alg.m() <= 3 && stable_by_linear_solve(alg, a, b)) {
      out.kind = PlaneKind::Stable;
      out.null_basis_caveat = false;
      return out;
    }
    out.kind = PlaneKind::Generic;
    return out;
  }
  if (hrank == 1 && vrank == 1) {
    // The plane splits as (P n H) + (P n V) exactly when each pure part is
    // actually contained in the plane; rank-1 parts guarantee it.
    out.kind = PlaneKind::Mixed;
    return out;
  }
  out.kind = PlaneKind::Generic;
  return out;
}

RicciResult ricci_tensor(const HTypeAlgebra& alg) {
  const int n = alg.n();
  const int m = alg.m();
  const int dim = n + m;

  const auto basis_element = [&](int a) {
    TangentElement e = tangent_zero(alg);
    if (a < n)
      e.h[a] = 1.0;
    else
      e.v[a - n] = 1.0;
    return e;
  };
  const auto full_sign = [&](int a) {
    return a < n ? alg.H.sign(a) : alg.V.sign(a - n);
  };

  RicciResult out;
  out.direct = Mat::Zero(dim, dim);
  for (int a = 0; a < dim; ++a) {
    const TangentElement ea = basis_element(a);
    for (int b = 0; b < dim; ++b) {
      const TangentElement eb = basis_element(b);
      double sum = 0.0;
      for (int c = 0; c < dim; ++c) {
        const TangentElement ec = basis_element(c);
        sum += full_sign(c) *
               tangent_product(alg, curvature_endomorphism(alg, ec, ea, eb), ec);
      }
      out.direct(a, b) = sum;
    }
  }

  double eps_sum_h = 0.0, eps_sum_v = 0.0;
  for (int i = 0; i < n; ++i) eps_sum_h += alg.H.sign(i);
  for (int a = 0; a < m; ++a) eps_sum_v += alg.V.sign(a);

  out.closed_form = Mat::Zero(dim, dim);
  out.closed_form.topLeftCorner(n, n) = -0.5 * m * alg.H.gram();
  out.closed_form.bottomRightCorner(m, m) = 0.25 * n * alg.V.gram();

  out.sign_sum_form = Mat::Zero(dim, dim);
  out.sign_sum_form.topLeftCorner(n, n) = -0.5 * eps_sum_v * alg.H.gram();
  out.sign_sum_form.bottomRightCorner(m, m) = 0.25 * eps_sum_h * alg.V.gram();

  out.max_dev_closed = (out.direct - out.closed_form).cwiseAbs().maxCoeff();
  out.max_dev_sign_sum = (out.direct - out.sign_sum_form).cwiseAbs().maxCoeff();
  out.h_type_consistent = out.max_dev_closed <= 1e-8;
  return out;
}

ScalarResult scalar_curvature(const HTypeAlgebra& alg) {
  const RicciResult ricci = ricci_tensor(alg);
  const int n = alg.n();
  const int m = alg.m();

  ScalarResult out;
  out.trace = 0.0;
  for (int a = 0; a < n + m; ++a) {
    const double eps = a < n ? alg.H.sign(a) : alg.V.sign(a - n);
    out.trace += eps * ricci.direct(a, a);
  }

  double eps_sum_h = 0.0, eps_sum_v = 0.0;
  for (int i = 0; i < n; ++i) eps_sum_h += alg.H.sign(i);
  for (int a = 0; a < m; ++a) eps_sum_v += alg.V.sign(a);
  out.formula = -0.25 * eps_sum_v * eps_sum_h;
  out.dimension_formula = -0.25 * double(m) * double(n);
  out.formula_matches = std::abs(out.trace - out.formula) <= 1e-10;
  return out;
}

}  // namespace htype
