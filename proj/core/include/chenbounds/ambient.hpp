#pragma once

#include <string>
#include <vector>

#include "chenbounds/tensor_core.hpp"

namespace chen {

// The seven structure functions f1, f2, f3, f4, f5,1, f5,2, f6, evaluated at
// one point. The undivided case embeds via f51 = f5, f52 = -f5.
struct FCoefficients {
  double f1 = 0, f2 = 0, f3 = 0, f4 = 0, f51 = 0, f52 = 0, f6 = 0;
};

// One tangent space of a generalized (kappa,mu)-space form with divided R5.
// Ambient dimension is 2m+1; by convention xi is the last coordinate vector
// and eta is the last-coordinate functional.
struct AmbientPoint {
  int m = 0;
  SkewOp phi;  // (2m+1) x (2m+1)
  SymOp h;     // (2m+1) x (2m+1)
  FCoefficients f;

  int dim() const { return 2 * m + 1; }
  Vec xi() const {
    Vec v = Vec::Zero(dim());
    v(dim() - 1) = 1.0;
    return v;
  }
  static double eta(const Vec& x) { return x(x.size() - 1); }
};

struct Violation {
  std::string identity;
  double residual = 0;
};

inline constexpr double kStructureTol = 1e-10;

// Checks the almost contact / h-tensor identities:
//   phi^2 = -I + eta (x) xi,  phi xi = 0,  eta o phi = 0,
//   <phi X, phi Y> = <X,Y> - eta(X)eta(Y),
//   h xi = 0,  h phi + phi h = 0,  tr h = tr(phi h) = 0.
// Never throws; returns one entry per violated identity.
std::vector<Violation> validate_ambient(const AmbientPoint& a);

// R_idx(X,Y)Z for idx in {1,2,3,4,51,52,6}.
Vec curvature_component(const AmbientPoint& a, int idx, const Vec& x, const Vec& y, const Vec& z);

// <sum_i f_i R_i(X,Y)Z, W>
double ambient_curvature(const AmbientPoint& a, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w);

// (kappa,mu)-space form coefficients for phi-sectional curvature c.
FCoefficients kappa_mu_coefficients(double c, double kappa, double mu);

// Non-Sasakian (kappa,mu)-space form in divided form; kappa = 1 is singular.
FCoefficients non_sasakian_divided_coefficients(double kappa, double mu);

// Contact-metric-to-Sasakian criterion f3 = f1 - 1 (within 1e-12).
bool classify_sasakian(const FCoefficients& f);

}  // namespace chen
