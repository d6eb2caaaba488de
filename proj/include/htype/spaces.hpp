#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

namespace htype {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Sign symbol eps_k^nu: -1 for k <= nu, +1 otherwise (k is 1-based).
double sign_symbol(int k, int nu);

/// Finite-dimensional real vector space with a non-degenerate scalar product
/// of index `index`, in the canonical basis ordering: the `index` negative
/// directions come first, so the Gram matrix is diag(-1,...,-1,+1,...,+1).
struct ScalarSpace {
  int dim = 0;
  int index = 0;

  ScalarSpace() = default;
  ScalarSpace(int dim_, int index_);

  /// eps_k for 0-based k.
  double sign(int k) const { return k < index ? -1.0 : 1.0; }

  Mat gram() const;
  Vec gram_diagonal() const;

  /// <a,b> = sum_k eps_k a_k b_k.  Throws on dimension mismatch.
  double product(const Vec& a, const Vec& b) const;
  double square(const Vec& a) const { return product(a, a); }

  bool operator==(const ScalarSpace& o) const {
    return dim == o.dim && index == o.index;
  }
};

/// exp(M) by scaling-and-squaring with a [13/13] Pade approximant.
/// Throws std::invalid_argument on non-square input.
Mat mat_exp(const Mat& m);

/// Deterministic RNG used everywhere randomness is needed.  The raw stream is
/// the standardized mt19937_64 sequence and doubles are extracted by a fixed
/// bit recipe, so seeded runs reproduce bit-exactly across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0,1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  Vec uniform_vec(int n, double lo, double hi) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace htype
