#pragma once

#include <string>
#include <vector>

#include "chenbounds/submanifold.hpp"

namespace chen {

// Subspaces handed to the invariants engine live in TANGENT-FRAME
// coordinates: basis vectors have length n and refer to the orthonormal
// tangent frame of the SubmanifoldPoint.

// Unordered tuple (n_1,...,n_k), stored ascending. Membership in S(n)
// requires every part >= 2, max part < n and sum <= n.
struct TupleSpec {
  std::vector<int> dims;

  int k() const { return static_cast<int>(dims.size()); }
  int sum() const {
    int s = 0;
    for (int d : dims) s += d;
    return s;
  }
  bool operator==(const TupleSpec& o) const { return dims == o.dims; }
  std::string str() const;
};

bool tuple_in_s(const TupleSpec& t, int n);

// All tuples of S(n) including the empty tuple, sorted by length then
// lexicographically.
std::vector<TupleSpec> enumerate_tuples(int n);

// c(n_1,...,n_k) = n^2 (n+k-1-sum) / (2 (n+k-sum)),
// b(n_1,...,n_k) = n(n-1)/2 - sum n_j(n_j-1)/2.
struct CB {
  double c = 0, b = 0;
};
CB constants_c_b(int n, const TupleSpec& t);

struct SearchBudget {
  int samples = 4096;
  int multistarts = 16;
  double step_tol = 1e-10;
  int max_iters = 200;
  std::uint64_t seed = 0;
};

enum class Certified { SampledBound, ExactAnalytic };
inline const char* to_string(Certified c) {
  return c == Certified::ExactAnalytic ? "exact-analytic" : "sampled-upper-bound-on-inf";
}

struct ExtremumResult {
  double value = 0;
  Mat witness;         // plane basis / concatenated tuple bases / k-plane basis
  Vec witness_vector;  // theta_k: the minimizing unit vector
  Certified certified = Certified::SampledBound;
};

double sectional_curvature(const SubmanifoldPoint& s, const Subspace& pi);
double scalar_curvature(const SubmanifoldPoint& s);
double subspace_scalar_curvature(const SubmanifoldPoint& s, const Subspace& l);

// sum of K(U ^ e_j) over an orthonormal completion {U, e_2..e_k} of P.
double k_ricci(const SubmanifoldPoint& s, const Subspace& p, const Vec& u);

// S_ij = sum_k R(e_i, e_k, e_k, e_j) in the tangent frame.
SymOp ricci_tensor(const SubmanifoldPoint& s);

// True when the intrinsic curvature tensor matches the constant-curvature
// form within tol; writes the constant through c0 when non-null.
bool is_constant_curvature(const SubmanifoldPoint& s, double tol = 1e-10, double* c0 = nullptr);

// Sampled + refined plane search. The reported value is an upper bound on the
// true infimum (lower bound on the supremum for sup_sectional); coordinate
// planes are always part of the candidate set, and results are monotone in
// budget.samples / budget.multistarts for a fixed seed.
ExtremumResult inf_sectional(const SubmanifoldPoint& s, const SearchBudget& budget);
ExtremumResult sup_sectional(const SubmanifoldPoint& s, const SearchBudget& budget);

// tau - min / tau - max of tau(L_1)+...+tau(L_k) over orthogonal tuples.
// Both draw the identical candidate set for a given budget, so
// delta_invariant >= tilde_delta always holds on shared samples.
ExtremumResult delta_invariant(const SubmanifoldPoint& s, const TupleSpec& t,
                               const SearchBudget& budget);
ExtremumResult tilde_delta(const SubmanifoldPoint& s, const TupleSpec& t,
                           const SearchBudget& budget);

// (1/(k-1)) min over (P, X) of Ric_P(X). For fixed X the minimum over P is
// exact (sum of the k-1 smallest eigenvalues on X-perp); sampling is only
// over X.
ExtremumResult theta_k(const SubmanifoldPoint& s, int k, const SearchBudget& budget);

// |delta - tilde_delta| <= tol on a shared sample set.
bool s_space_check(const SubmanifoldPoint& s, const TupleSpec& t, const SearchBudget& budget,
                   double tol);

}  // namespace chen
