#include "htype/spaces.hpp"

#include <cmath>
#include <stdexcept>

namespace htype {

double sign_symbol(int k, int nu) {
  return k <= nu ? -1.0 : 1.0;
}

ScalarSpace::ScalarSpace(int dim_, int index_) : dim(dim_), index(index_) {
  if (dim < 0) throw std::invalid_argument("ScalarSpace: negative dimension");
  if (index < 0 || index > dim)
    throw std::invalid_argument("ScalarSpace: index must satisfy 0 <= index <= dim");
}

Mat ScalarSpace::gram() const {
  return gram_diagonal().asDiagonal();
}

Vec ScalarSpace::gram_diagonal() const {
  Vec d(dim);
  for (int k = 0; k < dim; ++k) d[k] = sign(k);
  return d;
}

double ScalarSpace::product(const Vec& a, const Vec& b) const {
  if (a.size() != dim || b.size() != dim)
    throw std::invalid_argument("scalar_product: dimension mismatch");
  double s = 0.0;
  for (int k = 0; k < dim; ++k) s += sign(k) * a[k] * b[k];
  return s;
}

namespace {

// Pade [13/13] numerator coefficients (Higham, "The scaling and squaring
// method for the matrix exponential revisited").
constexpr double kPade13[] = {
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0,  129060195264000.0,   10559470521600.0,
    670442572800.0,      33522128640.0,       1323241920.0,
    40840800.0,          960960.0,            16380.0,
    182.0,               1.0};

Mat pade13(const Mat& a) {
  const int n = static_cast<int>(a.rows());
  const Mat ident = Mat::Identity(n, n);
  const Mat a2 = a * a;
  const Mat a4 = a2 * a2;
  const Mat a6 = a2 * a4;
  const Mat u = a * (a6 * (kPade13[13] * a6 + kPade13[11] * a4 + kPade13[9] * a2) +
                     kPade13[7] * a6 + kPade13[5] * a4 + kPade13[3] * a2 +
                     kPade13[1] * ident);
  const Mat v = a6 * (kPade13[12] * a6 + kPade13[10] * a4 + kPade13[8] * a2) +
                kPade13[6] * a6 + kPade13[4] * a4 + kPade13[2] * a2 +
                kPade13[0] * ident;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Mat mat_exp(const Mat& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("mat_exp: non-square input");
  if (m.rows() == 0) return Mat(0, 0);

  const double theta13 = 5.371920351148152;  // Higham's theta_13
  const double norm = m.cwiseAbs().colwise().sum().maxCoeff();  // 1-norm
  int squarings = 0;
  if (norm > theta13) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
  }
  Mat r = pade13(m / std::pow(2.0, squarings));
  for (int i = 0; i < squarings; ++i) r = r * r;
  return r;
}

}  // namespace htype
