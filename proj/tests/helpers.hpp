#pragma once

#include <string>
#include <vector>

#include "htype/composition.hpp"

namespace htype::testing {

inline Vec vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

/// Independent oracle for mu: solve the defining identity
/// <mu(v,h), e_j>_H = <v, [h,e_j]>_V coordinate by coordinate, touching only
/// the bracket (not the -eps J_H B composition used by the implementation).
inline Vec mu_oracle(const HTypeAlgebra& alg, const Vec& v, const Vec& h) {
  Vec out(alg.n());
  for (int j = 0; j < alg.n(); ++j) {
    Vec ej = Vec::Zero(alg.n());
    ej[j] = 1.0;
    out[j] = alg.H.sign(j) * alg.V.product(v, bracket(alg, h, ej));
  }
  return out;
}

/// The four catalog families at size n.
inline std::vector<CatalogEntry> catalog_entries(int n_max = 2) {
  std::vector<CatalogEntry> out;
  for (int n = 1; n <= n_max; ++n)
    for (const char* name : {"heis", "heis_split", "quat", "quat_split"})
      out.push_back(catalog(name, n));
  return out;
}

}  // namespace htype::testing
