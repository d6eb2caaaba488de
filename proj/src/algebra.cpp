#include "htype/algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace htype {

HTypeAlgebra::HTypeAlgebra(ScalarSpace H_, ScalarSpace V_, std::vector<Mat> B_,
                           std::string label_)
    : H(H_), V(V_), B(std::move(B_)), label(std::move(label_)) {
  if (H.dim < 1) throw std::invalid_argument("HTypeAlgebra: dim H must be >= 1");
  if (V.dim < 1) throw std::invalid_argument("HTypeAlgebra: dim V must be >= 1");
  if (static_cast<int>(B.size()) != V.dim)
    throw std::invalid_argument("HTypeAlgebra: need one B slice per V direction");
  for (const Mat& slice : B) {
    if (slice.rows() != H.dim || slice.cols() != H.dim)
      throw std::invalid_argument("HTypeAlgebra: B slice has wrong shape");
    const double defect = (slice + slice.transpose()).cwiseAbs().maxCoeff();
    if (defect > 1e-14)
      throw std::invalid_argument(
          "HTypeAlgebra: B slice is not skew-symmetric (defect " +
          std::to_string(defect) + ")");
  }
}

Vec bracket(const HTypeAlgebra& alg, const Vec& h1, const Vec& h2) {
  if (h1.size() != alg.n() || h2.size() != alg.n())
    throw std::invalid_argument("bracket: dimension mismatch");
  Vec out(alg.m());
  for (int b = 0; b < alg.m(); ++b) out[b] = h1.dot(alg.B[b] * h2);
  return out;
}

Mat ad_matrix(const HTypeAlgebra& alg, const Vec& h) {
  if (h.size() != alg.n()) throw std::invalid_argument("ad_matrix: dimension mismatch");
  Mat ad(alg.m(), alg.n());
  for (int b = 0; b < alg.m(); ++b) ad.row(b) = (alg.B[b].transpose() * h).transpose();
  return ad;
}

Mat mu_operator(const HTypeAlgebra& alg, const Vec& v) {
  if (v.size() != alg.m()) throw std::invalid_argument("mu: dimension mismatch");
  const Vec jh = alg.H.gram_diagonal();
  Mat op = Mat::Zero(alg.n(), alg.n());
  for (int b = 0; b < alg.m(); ++b) {
    if (v[b] == 0.0) continue;
    op -= alg.V.sign(b) * v[b] * (jh.asDiagonal() * alg.B[b]);
  }
  return op;
}

Vec mu(const HTypeAlgebra& alg, const Vec& v, const Vec& h) {
  if (h.size() != alg.n()) throw std::invalid_argument("mu: dimension mismatch");
  return mu_operator(alg, v) * h;
}

Mat a_slice(const HTypeAlgebra& alg, int b) {
  return alg.V.sign(b) * alg.B[b] * alg.H.gram();
}

namespace {

// Unit or anti-unit vector by rejection: uniform in [-1,1]^n, reject
// |<h,h>| < 0.1, rescale by 1/sqrt(|<h,h>|).
Vec sample_unit(const ScalarSpace& sp, Rng& rng) {
  for (;;) {
    Vec h = rng.uniform_vec(sp.dim, -1.0, 1.0);
    const double q = sp.square(h);
    if (std::abs(q) < 0.1) continue;
    return h / std::sqrt(std::abs(q));
  }
}

}  // namespace

Mat ad_kernel(const HTypeAlgebra& alg, const Vec& h) {
  const Mat ad = ad_matrix(alg, h);
  Eigen::JacobiSVD<Mat> svd(ad, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv[0] : 0.0) * 1e-10;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return svd.matrixV().rightCols(alg.n() - rank);
}

Mat ad_kernel_complement(const HTypeAlgebra& alg, const Vec& h) {
  const Mat kernel = ad_kernel(alg, h);
  if (kernel.cols() == 0) return Mat::Identity(alg.n(), alg.n());
  // x lies in the complement iff <k, x>_H = 0 for every kernel column k,
  // i.e. x is in the null space of kernel^T J_H.
  const Mat constraints = kernel.transpose() * alg.H.gram();
  Eigen::JacobiSVD<Mat> svd(constraints, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv[0] : 0.0) * 1e-10;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return svd.matrixV().rightCols(alg.n() - rank);
}

ValidationReport validate_h_type(const HTypeAlgebra& alg, int trials, double tol,
                                 std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("validate_h_type: trials < 1");
  if (tol <= 0.0) throw std::invalid_argument("validate_h_type: tol <= 0");

  const int n = alg.n();
  const int m = alg.m();
  Rng rng(seed);

  ValidationReport report;
  report.label = alg.label;
  report.sampled_vectors = trials;

  double res_defining = 0.0, res_image = 0.0, res_composition = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const Vec v = rng.uniform_vec(m, -1.0, 1.0);
    const Vec v2 = rng.uniform_vec(m, -1.0, 1.0);
    const Vec h = rng.uniform_vec(n, -1.0, 1.0);
    const Vec h2 = rng.uniform_vec(n, -1.0, 1.0);
    const Vec mvh = mu(alg, v, h);

    res_defining = std::max(
        res_defining,
        std::abs(alg.H.product(mvh, h2) - alg.V.product(v, bracket(alg, h, h2))));
    res_image = std::max(
        res_image,
        (bracket(alg, h, mvh) - alg.H.square(h) * v).cwiseAbs().maxCoeff());
    res_composition = std::max(
        res_composition,
        std::abs(alg.H.product(mvh, mu(alg, v2, h)) -
                 alg.V.product(v, v2) * alg.H.square(h)));
  }

  const Mat jh = alg.H.gram();
  const Mat ident = Mat::Identity(n, n);
  double res_a2 = 0.0, res_jb2 = 0.0, res_anti = 0.0;
  std::vector<Mat> jb(m);
  for (int b = 0; b < m; ++b) jb[b] = jh * alg.B[b];
  for (int b = 0; b < m; ++b) {
    const Mat a = a_slice(alg, b);
    res_a2 = std::max(res_a2,
                      (a * a + alg.V.sign(b) * ident).cwiseAbs().maxCoeff());
    res_jb2 = std::max(
        res_jb2, (jb[b] * jb[b] + alg.V.sign(b) * ident).cwiseAbs().maxCoeff());
  }
  for (int a = 0; a < m; ++a)
    for (int b = a + 1; b < m; ++b)
      res_anti = std::max(
          res_anti, (jb[a] * jb[b] + jb[b] * jb[a]).cwiseAbs().maxCoeff());

  // (g): ad_h on the complement of its kernel is onto V and (anti-)isometric.
  const int unit_samples = std::max(8, trials / 8);
  double res_isometry = 0.0;
  for (int trial = 0; trial < unit_samples; ++trial) {
    const Vec h = sample_unit(alg.H, rng);
    const Mat basis = ad_kernel_complement(alg, h);
    if (basis.cols() == 0) {
      res_isometry = std::max(res_isometry, 1.0);
      continue;
    }
    const Mat ad = ad_matrix(alg, h);
    const Mat image = ad * basis;  // m x dim(complement), columns in V coords

    // Surjectivity: ad_h restricted to the complement must have rank m.
    Eigen::JacobiSVD<Mat> svd(image);
    const auto& sv = svd.singularValues();
    const double cutoff = (sv.size() > 0 ? sv[0] : 0.0) * 1e-10;
    int rank = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv[i] > cutoff) ++rank;
    if (rank < m) {
      res_isometry = std::max(res_isometry, 1.0);
      continue;
    }

    const int d = static_cast<int>(basis.cols());
    Mat gram_h(d, d), gram_v(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        gram_h(i, j) = alg.H.product(basis.col(i), basis.col(j));
        gram_v(i, j) = alg.V.product(image.col(i), image.col(j));
      }
    const double iso = (gram_v - gram_h).cwiseAbs().maxCoeff();
    const double anti = (gram_v + gram_h).cwiseAbs().maxCoeff();
    res_isometry = std::max(res_isometry, std::min(iso, anti));
  }

  auto add = [&](const std::string& name, double residual) {
    report.checks.push_back({name, residual, tol, residual <= tol});
  };
  add("defining_identity", res_defining);
  add("image_identity", res_image);
  add("composition_identity", res_composition);
  add("clifford_square_A", res_a2);
  add("clifford_square_JB", res_jb2);
  add("clifford_anticommutator", res_anti);
  add("ad_isometry_onto", res_isometry);

  report.passed = true;
  for (const auto& c : report.checks) report.passed = report.passed && c.passed;
  return report;
}

bool center_check(const HTypeAlgebra& alg, int trials, double /*tol*/) {
  if (trials < 1) throw std::invalid_argument("center_check: trials < 1");
  Mat stacked(alg.m() * alg.n(), alg.n());
  for (int b = 0; b < alg.m(); ++b)
    stacked.middleRows(b * alg.n(), alg.n()) = alg.B[b];
  Eigen::JacobiSVD<Mat> svd(stacked);
  const auto& sv = svd.singularValues();
  const double cutoff = (sv.size() > 0 ? sv[0] : 0.0) * 1e-10;
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv[i] > cutoff) ++rank;
  return rank == alg.n();
}

}  // namespace htype
