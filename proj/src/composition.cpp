#include "htype/composition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace htype {

CompositionMap::CompositionMap(ScalarSpace U_, ScalarSpace H_,
                               std::vector<Mat> M_, int u0_index_)
    : U(U_), H(H_), M(std::move(M_)), u0_index(u0_index_) {
  if (static_cast<int>(M.size()) != U.dim)
    throw std::invalid_argument("CompositionMap: need one slice per U direction");
  for (const Mat& slice : M)
    if (slice.rows() != H.dim || slice.cols() != H.dim)
      throw std::invalid_argument("CompositionMap: slice has wrong shape");
  if (u0_index >= U.dim)
    throw std::invalid_argument("CompositionMap: u0_index out of range");
  if (u0_index >= 0) {
    const double defect =
        (M[u0_index] - Mat::Identity(H.dim, H.dim)).cwiseAbs().maxCoeff();
    if (defect > 1e-12)
      throw std::invalid_argument(
          "CompositionMap: u0 slice is not the identity (normalization)");
  }
}

Mat CompositionMap::mu_operator(const Vec& u) const {
  if (u.size() != U.dim)
    throw std::invalid_argument("CompositionMap::mu: dimension mismatch");
  Mat op = Mat::Zero(H.dim, H.dim);
  for (int k = 0; k < U.dim; ++k)
    if (u[k] != 0.0) op += u[k] * M[k].transpose();
  return op;
}

Vec CompositionMap::mu(const Vec& u, const Vec& h) const {
  if (h.size() != H.dim)
    throw std::invalid_argument("CompositionMap::mu: dimension mismatch");
  return mu_operator(u) * h;
}

double composition_residual(const CompositionMap& map, int trials,
                            std::uint64_t seed) {
  Rng rng(seed);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Vec u = rng.uniform_vec(map.U.dim, -1.0, 1.0);
    const Vec u2 = rng.uniform_vec(map.U.dim, -1.0, 1.0);
    const Vec h = rng.uniform_vec(map.H.dim, -1.0, 1.0);
    const Vec muh = map.mu(u, h);

    const double rhs = map.U.square(u) * map.H.square(h);
    worst = std::max(worst, std::abs(map.H.square(muh) - rhs) /
                                (1.0 + std::abs(rhs)));

    const double rhs2 = map.U.product(u, u2) * map.H.square(h);
    worst = std::max(worst,
                     std::abs(map.H.product(muh, map.mu(u2, h)) - rhs2) /
                         (1.0 + std::abs(rhs2)));
  }
  return worst;
}

bool verify_composition(const CompositionMap& map, int trials, double tol,
                        std::uint64_t seed) {
  return composition_residual(map, trials, seed) <= tol;
}

Vec phi_map(const CompositionMap& map, const Vec& h, const Vec& h2) {
  if (h.size() != map.H.dim || h2.size() != map.H.dim)
    throw std::invalid_argument("phi_map: dimension mismatch");
  Vec phi(map.U.dim);
  for (int k = 0; k < map.U.dim; ++k)
    phi[k] = map.U.sign(k) * map.H.product(map.M[k].transpose() * h, h2);
  return phi;
}

HTypeAlgebra algebra_from_composition(const CompositionMap& map,
                                      const std::string& label) {
  if (map.u0_index < 0)
    throw std::invalid_argument("algebra_from_composition: unnormalized map");
  if (map.U.dim < 2)
    throw std::invalid_argument("algebra_from_composition: dim U must be >= 2");
  if (map.U.sign(map.u0_index) < 0)
    throw std::invalid_argument("algebra_from_composition: lambda(u0) must be +1");
  if (!verify_composition(map, 128, 1e-8))
    throw std::invalid_argument("algebra_from_composition: composition check fails");

  const Mat jh = map.H.gram();
  std::vector<Mat> B;
  B.reserve(map.U.dim - 1);
  for (int l = 0; l < map.U.dim; ++l) {
    if (l == map.u0_index) continue;
    // [h_i, h_j] coefficient along this V direction is Phi_l(h_i, h_j),
    // and Phi_l as a bilinear form is eps_l * M[l] J_H.
    Mat slice = map.U.sign(l) * map.M[l] * jh;
    const double defect = (slice + slice.transpose()).cwiseAbs().maxCoeff();
    if (defect > 1e-8 * std::max(1.0, slice.cwiseAbs().maxCoeff()))
      throw std::invalid_argument(
          "algebra_from_composition: pi.Phi is not anti-symmetric");
    slice = 0.5 * (slice - slice.transpose().eval());
    B.push_back(std::move(slice));
  }
  const ScalarSpace V(map.U.dim - 1, map.U.index);
  return HTypeAlgebra(map.H, V, std::move(B), label);
}

CompositionMap composition_from_algebra(const HTypeAlgebra& alg, int u0_sign) {
  if (u0_sign != 1 && u0_sign != -1)
    throw std::invalid_argument("composition_from_algebra: u0_sign must be +-1");
  const ValidationReport report = validate_h_type(alg);
  if (!report.passed)
    throw std::invalid_argument(
        "composition_from_algebra: algebra fails H-type validation");

  const int m = alg.m();
  // u_0 sits at position nu_V either way: first positive slot for +1, last
  // negative slot for -1; the V directions keep their canonical order.
  const int u0 = alg.V.index;
  const ScalarSpace U(m + 1, alg.V.index + (u0_sign < 0 ? 1 : 0));
  std::vector<Mat> M(m + 1);
  M[u0] = Mat::Identity(alg.n(), alg.n());
  for (int l = 0; l < m + 1; ++l) {
    if (l == u0) continue;
    const int b = l < u0 ? l : l - 1;
    M[l] = a_slice(alg, b);
  }
  return CompositionMap(U, alg.H, std::move(M), u0);
}

namespace {

// Reorders a map given in presentation ("natural") coordinates into canonical
// signed order: negative directions first, relative order preserved.
// perm[k] = natural index of canonical direction k.
std::vector<int> canonical_order(const std::vector<double>& signs) {
  std::vector<int> perm;
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < static_cast<int>(signs.size()); ++i)
      if ((pass == 0) == (signs[i] < 0)) perm.push_back(i);
  return perm;
}

int count_negative(const std::vector<double>& signs) {
  return static_cast<int>(std::count_if(signs.begin(), signs.end(),
                                        [](double s) { return s < 0; }));
}

struct NaturalComposition {
  std::vector<double> phi_signs;
  std::vector<double> lam_signs;
  std::vector<Mat> slices;  // coefficient convention, natural coordinates
  int u0 = 0;
};

struct Canonicalized {
  CompositionMap map;
  std::vector<int> h_perm;
  std::vector<int> u_perm;
};

Canonicalized canonicalize(const NaturalComposition& nat) {
  const int n = static_cast<int>(nat.phi_signs.size());
  const std::vector<int> hp = canonical_order(nat.phi_signs);
  const std::vector<int> up = canonical_order(nat.lam_signs);
  std::vector<Mat> slices(nat.slices.size(), Mat(n, n));
  int u0_canon = -1;
  for (int k = 0; k < static_cast<int>(up.size()); ++k) {
    if (up[k] == nat.u0) u0_canon = k;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        slices[k](i, j) = nat.slices[up[k]](hp[i], hp[j]);
  }
  const ScalarSpace H(n, count_negative(nat.phi_signs));
  const ScalarSpace U(static_cast<int>(nat.lam_signs.size()),
                      count_negative(nat.lam_signs));
  CompositionMap map(U, H, std::move(slices), u0_canon);
  return {std::move(map), hp, up};
}

NaturalComposition natural_r2(int a) {
  if (a == 0)
    throw std::invalid_argument("composition_r2: degenerate form (a = 0)");
  if (a != 1 && a != -1)
    throw std::invalid_argument("composition_r2: a must be +1 or -1");
  NaturalComposition nat;
  nat.phi_signs = {1.0, double(a)};
  nat.lam_signs = {1.0, double(a)};
  nat.slices.resize(2);
  nat.slices[0] = Mat::Identity(2, 2);
  // mu_a(e_2, h): h_1 -> -h_2, h_2 -> a h_1
  nat.slices[1] = Mat::Zero(2, 2);
  nat.slices[1](0, 1) = -1.0;
  nat.slices[1](1, 0) = double(a);
  nat.u0 = 0;
  return nat;
}

NaturalComposition natural_quaternionic(int a, int b, int blocks) {
  if (std::abs(a) != 1 || std::abs(b) != 1)
    throw std::invalid_argument("composition_quaternionic: a, b must be +-1");
  if (blocks < 1)
    throw std::invalid_argument("composition_quaternionic: blocks must be >= 1");
  const double ab = double(a) * double(b);
  NaturalComposition nat;
  nat.lam_signs = {1.0, double(a), double(b), ab};
  for (int blk = 0; blk < blocks; ++blk)
    for (double s : {1.0, double(a), double(b), ab}) nat.phi_signs.push_back(s);

  // Coefficient rows of mu(u,h) = conj(u) * h in the generalized quaternion
  // algebra with i^2 = -a, j^2 = -b; its norm multiplicativity is exactly the
  // four-square-type identity for phi_(a,b,ab).
  Mat m1 = Mat::Identity(4, 4);
  Mat m2(4, 4), m3(4, 4), m4(4, 4);
  m2 << 0, -1, 0, 0,
        double(a), 0, 0, 0,
        0, 0, 0, -1,
        0, 0, double(a), 0;
  m3 << 0, 0, -1, 0,
        0, 0, 0, 1,
        double(b), 0, 0, 0,
        0, -double(b), 0, 0;
  m4 << 0, 0, 0, -1,
        0, 0, -double(a), 0,
        0, double(b), 0, 0,
        ab, 0, 0, 0;

  const int n = 4 * blocks;
  nat.slices.assign(4, Mat::Zero(n, n));
  for (int blk = 0; blk < blocks; ++blk) {
    nat.slices[0].block(4 * blk, 4 * blk, 4, 4) = m1;
    nat.slices[1].block(4 * blk, 4 * blk, 4, 4) = m2;
    nat.slices[2].block(4 * blk, 4 * blk, 4, 4) = m3;
    nat.slices[3].block(4 * blk, 4 * blk, 4, 4) = m4;
  }
  nat.u0 = 0;
  return nat;
}

// Heisenberg-family witnesses; per-pair coefficient block of the non-identity
// slice, oriented so the induced bracket is [X_k, Y_k] = +Z.
NaturalComposition natural_heisenberg(int n, bool split) {
  NaturalComposition nat;
  nat.lam_signs = {1.0, split ? -1.0 : 1.0};
  Mat blk(2, 2);
  if (split) {
    blk << 0, 1,
           1, 0;
  } else {
    blk << 0, 1,
           -1, 0;
  }
  for (int k = 0; k < n; ++k) {
    nat.phi_signs.push_back(1.0);
    nat.phi_signs.push_back(split ? -1.0 : 1.0);
  }
  nat.slices.assign(2, Mat::Zero(2 * n, 2 * n));
  nat.slices[0] = Mat::Identity(2 * n, 2 * n);
  for (int k = 0; k < n; ++k) nat.slices[1].block(2 * k, 2 * k, 2, 2) = blk;
  nat.u0 = 0;
  return nat;
}

std::string catalog_label(int dim_h, int idx_h, int dim_v) {
  return "H^{" + std::to_string(dim_h) + "," + std::to_string(idx_h) + "," +
         std::to_string(dim_v) + "}";
}

}  // namespace

CompositionMap composition_r2(int a) {
  return canonicalize(natural_r2(a)).map;
}

CompositionMap composition_quaternionic(int a, int b, int blocks) {
  return canonicalize(natural_quaternionic(a, b, blocks)).map;
}

CatalogEntry catalog(const std::string& name, int n) {
  if (n < 1) throw std::invalid_argument("catalog: n must be >= 1");
  NaturalComposition nat;
  std::string label;
  if (name == "heis") {
    nat = natural_heisenberg(n, false);
    label = catalog_label(2 * n, 0, 1);
  } else if (name == "heis_split") {
    nat = natural_heisenberg(n, true);
    label = catalog_label(2 * n, n, 1);
  } else if (name == "quat") {
    nat = natural_quaternionic(1, 1, n);
    label = catalog_label(4 * n, 0, 3);
  } else if (name == "quat_split") {
    nat = natural_quaternionic(1, -1, n);
    label = catalog_label(4 * n, 2 * n, 3);
  } else {
    throw std::invalid_argument("catalog: unknown name '" + name + "'");
  }
  Canonicalized canon = canonicalize(nat);
  HTypeAlgebra alg = algebra_from_composition(canon.map, label);
  alg.h_order = canon.h_perm;
  alg.v_order.clear();
  for (int k = 0; k < static_cast<int>(canon.u_perm.size()); ++k)
    if (k != canon.map.u0_index) alg.v_order.push_back(canon.u_perm[k]);
  return {std::move(alg), std::move(canon.map)};
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

using Coeffs = Eigen::Matrix<double, 8, 1>;
using Resid = Eigen::Matrix<double, 9, 1>;
using Jac = Eigen::Matrix<double, 9, 8>;

// Coefficient equations of phi(mu(u,h)) = lambda(u) phi(h) for
// mu((y1,y2),(x1,x2)) = (a y1x1 + b y1x2 + c y2x1 + d y2x2,
//                        al y1x1 + be y1x2 + ga y2x1 + de y2x2),
// obtained by matching the nine monomials y_i y_j x_k x_l.
Resid residuals(const Coeffs& z, double p1, double p2, double q1, double q2) {
  const double a = z[0], b = z[1], c = z[2], d = z[3];
  const double al = z[4], be = z[5], ga = z[6], de = z[7];
  Resid r;
  r[0] = p1 * a * a + p2 * al * al - q1 * p1;
  r[1] = p1 * b * b + p2 * be * be - q1 * p2;
  r[2] = p1 * c * c + p2 * ga * ga - q2 * p1;
  r[3] = p1 * d * d + p2 * de * de - q2 * p2;
  r[4] = p1 * a * b + p2 * al * be;
  r[5] = p1 * c * d + p2 * ga * de;
  r[6] = p1 * a * c + p2 * al * ga;
  r[7] = p1 * b * d + p2 * be * de;
  r[8] = p1 * (a * d + b * c) + p2 * (al * de + be * ga);
  return r;
}

Jac jacobian(const Coeffs& z, double p1, double p2) {
  const double a = z[0], b = z[1], c = z[2], d = z[3];
  const double al = z[4], be = z[5], ga = z[6], de = z[7];
  Jac j = Jac::Zero();
  j(0, 0) = 2 * p1 * a;  j(0, 4) = 2 * p2 * al;
  j(1, 1) = 2 * p1 * b;  j(1, 5) = 2 * p2 * be;
  j(2, 2) = 2 * p1 * c;  j(2, 6) = 2 * p2 * ga;
  j(3, 3) = 2 * p1 * d;  j(3, 7) = 2 * p2 * de;
  j(4, 0) = p1 * b;  j(4, 1) = p1 * a;  j(4, 4) = p2 * be;  j(4, 5) = p2 * al;
  j(5, 2) = p1 * d;  j(5, 3) = p1 * c;  j(5, 6) = p2 * de;  j(5, 7) = p2 * ga;
  j(6, 0) = p1 * c;  j(6, 2) = p1 * a;  j(6, 4) = p2 * ga;  j(6, 6) = p2 * al;
  j(7, 1) = p1 * d;  j(7, 3) = p1 * b;  j(7, 5) = p2 * de;  j(7, 7) = p2 * be;
  j(8, 0) = p1 * d;  j(8, 1) = p1 * c;  j(8, 2) = p1 * b;  j(8, 3) = p1 * a;
  j(8, 4) = p2 * de; j(8, 5) = p2 * ga; j(8, 6) = p2 * be; j(8, 7) = p2 * al;
  return j;
}

// Damped Gauss-Newton (Levenberg) descent from one start point.
double descend(Coeffs& z, double p1, double p2, double q1, double q2) {
  double lambda = 1e-3;
  Resid r = residuals(z, p1, p2, q1, q2);
  double cost = r.squaredNorm();
  for (int iter = 0; iter < 200; ++iter) {
    if (cost < 1e-26) break;
    const Jac j = jacobian(z, p1, p2);
    const Eigen::Matrix<double, 8, 8> jtj = j.transpose() * j;
    const Coeffs g = j.transpose() * r;
    bool stepped = false;
    for (int attempt = 0; attempt < 30; ++attempt) {
      Eigen::Matrix<double, 8, 8> damped = jtj;
      damped.diagonal().array() += lambda;
      const Coeffs step = damped.ldlt().solve(g);
      const Coeffs trial = z - step;
      const double trial_cost =
          residuals(trial, p1, p2, q1, q2).squaredNorm();
      if (trial_cost < cost) {
        z = trial;
        r = residuals(z, p1, p2, q1, q2);
        cost = trial_cost;
        lambda = std::max(lambda * 0.3, 1e-12);
        stepped = true;
        break;
      }
      lambda *= 10.0;
    }
    if (!stepped) break;
  }
  return cost;
}

}  // namespace

SearchOutcome search_composition_2d(int phi_index, int lambda_index,
                                    int restarts, std::uint64_t seed) {
  SearchOutcome out;
  if (phi_index < 0 || phi_index > 2 || lambda_index < 0 || lambda_index > 2) {
    out.note = "indices must lie in 0..2";
    return out;
  }
  if (restarts < 1) restarts = 1;

  const ScalarSpace phi(2, phi_index);
  const ScalarSpace lam(2, lambda_index);
  const double p1 = phi.sign(0), p2 = phi.sign(1);
  const double q1 = lam.sign(0), q2 = lam.sign(1);

  double best_cost = std::numeric_limits<double>::infinity();
  Coeffs best = Coeffs::Zero();
  for (int restart = 0; restart < restarts; ++restart) {
    Rng rng(splitmix64(seed * 0x100000001b3ull + restart));
    Coeffs z;
    for (int i = 0; i < 8; ++i) z[i] = rng.uniform(-2.0, 2.0);
    const double cost = descend(z, p1, p2, q1, q2);
    if (cost < best_cost) {
      best_cost = cost;
      best = z;
    }
  }

  out.residual = best_cost;
  for (int i = 0; i < 8; ++i) out.coefficients[i] = best[i];
  out.found = best_cost <= 1e-10;

  if (phi_index == 1 && lambda_index == 0) {
    // Exact nonexistence for x1^2 - x2^2 composed against y1^2 + y2^2:
    // the coefficient equations force alpha != 0 and delta^2 = -alpha^2.
    out.contradiction = true;
    out.note =
        "algebraic contradiction: the coefficient equations force "
        "delta^2 = -alpha^2 with alpha != 0, impossible over the reals";
  }

  if (out.found) {
    // Assemble the map, then normalize mu(u*,.) to the identity for the
    // first positive-lambda direction u*.
    // mu(e_1, h) = (a x1 + b x2, al x1 + be x2): operator [[a,b],[al,be]],
    // coefficient matrix is its transpose; likewise for e_2.
    std::vector<Mat> slices(2, Mat(2, 2));
    slices[0] << best[0], best[4], best[1], best[5];
    slices[1] << best[2], best[6], best[3], best[7];

    int u_star = -1;
    for (int k = 0; k < 2; ++k)
      if (lam.sign(k) > 0) { u_star = k; break; }
    if (u_star < 0) {
      out.note = "found a composition but lambda has no +1 direction to "
                 "normalize against";
      return out;
    }
    const Mat s_op = slices[u_star].transpose();
    if (std::abs(s_op.determinant()) < 1e-8) {
      out.note = "found a composition but the candidate u0 slice is singular";
      return out;
    }
    const Mat s_inv = s_op.inverse();
    for (Mat& slice : slices) slice = (slice.transpose() * s_inv).transpose().eval();
    slices[u_star] = Mat::Identity(2, 2);
    out.map = CompositionMap(lam, phi, std::move(slices), u_star);
  }
  return out;
}

}  // namespace htype
