#pragma once

#include <vector>

#include "chenbounds/forge.hpp"
#include "chenbounds/inequalities.hpp"

namespace chen::testing {

inline AmbientPoint simple_ambient(int m, const FCoefficients& f,
                                   std::vector<double> eigs = {}) {
  GeneratorSpec spec;
  spec.m = m;
  spec.n = 2;
  spec.mode = GeneratorMode::General;
  spec.f_source = f;
  spec.h_eigenvalues = eigs.empty() ? std::vector<double>(m, 0.0) : eigs;
  return make_ambient(spec);
}

// Plain adapted frame: tangent = X_1..X_n, normals = phi X_1..phi X_n,
// then the unused pairs, xi last.
inline SubmanifoldPoint adapted_instance(const AmbientPoint& a, int n,
                                         std::vector<Mat> sigma_free) {
  const int m = a.m, d = a.dim();
  Mat tf = Mat::Zero(d, n), nf = Mat::Zero(d, d - n);
  for (int i = 0; i < n; ++i) {
    tf(i, i) = 1.0;
    nf(m + i, i) = 1.0;
  }
  int col = n;
  for (int j = n; j < m; ++j) nf(j, col++) = 1.0;
  for (int j = n; j < m; ++j) nf(m + j, col++) = 1.0;
  nf(d - 1, col) = 1.0;
  if (sigma_free.empty()) sigma_free.assign(d - n - 1, Mat::Zero(n, n));
  return build_submanifold(a, tf, nf, sigma_free);
}

// n = m = 4, f1 = 1, h = 0, single shape operator diag(1,2,3,3).
// Hand values: tau = 35, ||sigma||^2 = 23, ||H||^2 = 81/16, K(e1^e2) = 3.
inline SubmanifoldPoint diag1233() {
  AmbientPoint a = simple_ambient(4, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  std::vector<Mat> sf(4, Mat::Zero(4, 4));
  sf[0].diagonal() << 1, 2, 3, 3;
  return adapted_instance(a, 4, sf);
}

inline SubmanifoldPoint totally_geodesic(int n, int m, double f1 = 1.0) {
  AmbientPoint a = simple_ambient(m, FCoefficients{f1, 0, f1 - 1, 0, 0, 0, 0});
  return adapted_instance(a, n, {});
}

}  // namespace chen::testing
