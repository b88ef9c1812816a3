#pragma once

#include <variant>
#include <vector>

#include "chenbounds/invariants.hpp"

namespace chen {

enum class GeneratorMode { General, Sasakian };

struct KappaMuSource {
  double c = 1, kappa = 1, mu = 0;
};
struct NonSasakianSource {
  double kappa = 0, mu = 0;
};
using FSource = std::variant<FCoefficients, KappaMuSource, NonSasakianSource>;

struct GeneratorSpec {
  int m = 3;
  int n = 3;
  GeneratorMode mode = GeneratorMode::General;
  FSource f_source = FCoefficients{1, 0, 0, 0, 0, 0, 0};
  std::vector<double> h_eigenvalues;  // empty: drawn uniform(-1,1); ignored in Sasakian mode
  double sigma_scale = 1.0;
  std::uint64_t seed = 0;
  // Sasakian mode pins f3 = f1 - 1; when set, f2 = f1 - 1 is also required.
  bool enforce_sasakian_f2 = false;
};

FCoefficients resolve_f(const GeneratorSpec& spec);

// Canonical adapted point: phi is the block rotation pairing (X_i, phi X_i)
// with xi last; h acts as h X_i = lambda_i X_i, h phi X_i = -lambda_i phi X_i.
// validate_ambient is empty by construction.
AmbientPoint make_ambient(const GeneratorSpec& spec);

// Tangent frame from the adapted Legendrian vectors, rotated within each
// (X_i, phi X_i) pair by a seeded angle when general_frame is set (this is
// what makes (phi h)^T nonzero and exercises the f52 terms). Free sigma
// entries are uniform(-sigma_scale, sigma_scale).
SubmanifoldPoint make_random_submanifold(const AmbientPoint& a, int n, double sigma_scale,
                                         std::uint64_t seed, bool general_frame = true);

// sigma(X,Y) = <X,Y> H with ||H|| = lambda along the given non-xi normal.
SubmanifoldPoint make_totally_umbilical(const AmbientPoint& a, int n, double lambda,
                                        int normal_index = 0);

// The fundamental-inequality equality case: A_{n+1} = diag(a, b, (a+b)I),
// remaining non-xi normals carry the trace-free pi-block [[c,d],[d,-c]].
// c_list/d_list have one entry per normal beyond e_{n+1} (xi excluded).
SubmanifoldPoint make_equality_basic(const AmbientPoint& a, int n, double pa, double pb,
                                     const std::vector<double>& c_list,
                                     const std::vector<double>& d_list);

// One set of equal-trace diagonal blocks per non-xi normal.
struct BlockSpec {
  std::vector<Mat> blocks;  // one symmetric n_j x n_j block per tuple entry
};

// The delta-tuple equality case: shape operators diag(B_1..B_k, a_r I) over
// the frame-aligned partition of {1..n}, all block traces equal to the tail
// coefficient a_r. One BlockSpec per non-xi normal.
SubmanifoldPoint make_equality_delta(const AmbientPoint& a, int n, const TupleSpec& t,
                                     const std::vector<BlockSpec>& block_specs);

struct OracleInvariants {
  double tau = 0;
  double inf_k = 0;
  std::vector<std::pair<TupleSpec, double>> delta;        // per tuple of S(n)
  std::vector<std::pair<TupleSpec, double>> tilde_delta;  // shared sample set
  std::vector<std::pair<int, double>> theta;              // k = 2..n
};

// Brute-force recomputation of the invariants by dense sampling with no local
// refinement, on an evaluation path independent of the engine (curvature is
// re-derived from the structure-tensor formulas, not the cached tensor).
// Used only to cross-check; n <= 5.
OracleInvariants oracle_invariants(const SubmanifoldPoint& s, int density,
                                   std::uint64_t seed = 0x0eac1e);

}  // namespace chen
