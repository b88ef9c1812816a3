#pragma once

#include <optional>
#include <string>
#include <vector>

#include "chenbounds/invariants.hpp"

namespace chen {

struct CheckTolerances {
  double eq_tol = 1e-9;     // |slack| below this flags equality
  double slack_tol = 1e-8;  // exact-mode checks fail when slack < -slack_tol
  double form_tol = 1e-7;   // equality-form detector residual threshold
};

enum class CheckMode { Exact, Conservative };
inline const char* to_string(CheckMode m) {
  return m == CheckMode::Exact ? "exact" : "conservative";
}

struct InequalityReport {
  std::string name;
  double lhs = 0, rhs = 0;
  double slack = 0;  // rhs - lhs
  bool equality = false;
  CheckMode mode = CheckMode::Exact;
  CheckTolerances tol;
  Mat witness_subspace;  // empty when not applicable
  Vec witness_vector;
  // For the theta_k check: the 2tau-based bound of the scalar-curvature
  // inequality, which the theta bound follows from.
  std::optional<double> exact_chain_lhs;

  bool passed() const { return mode == CheckMode::Conservative || slack >= -tol.slack_tol; }
};

struct EqualityFormReport {
  bool matched = false;
  Mat tangent_basis;            // basis realizing the structural form, when found
  std::vector<double> params;   // basic: a, b, then (c_r, d_r) pairs; delta: a_r per normal
  double residual = 0;
};

struct ChenLemmaResult {
  bool holds = false;
  bool equality = false;
  double margin = 0;  // 2 a1 a2 - a_{n+1}
};

// The scalar-curvature / mean-curvature identity; lhs and rhs are computed by
// independent code paths, so this is the master cross-check of the ambient,
// Gauss, and tangential-part code.
InequalityReport check_scalar_identity(const SubmanifoldPoint& s, const CheckTolerances& tol = {});

// tau - K(pi) against the squared-mean-curvature bound, per plane section.
InequalityReport check_chen_fundamental(const SubmanifoldPoint& s, const Subspace& pi,
                                        const CheckTolerances& tol = {});

// Ric(U) against the squared-mean-curvature bound, per unit tangent vector.
InequalityReport check_ricci_bound(const SubmanifoldPoint& s, const Vec& u,
                                   const CheckTolerances& tol = {});

// n(n-1)||H||^2 against the 2tau-based expression.
InequalityReport check_mean_vs_scalar(const SubmanifoldPoint& s, const CheckTolerances& tol = {});

// The theta_k bound. Sampled theta can only over-estimate the true infimum,
// so the check is conservative unless the instance has constant curvature
// (where theta_k is exact).
InequalityReport check_theta_bound(const SubmanifoldPoint& s, int k, const SearchBudget& budget,
                                   const CheckTolerances& tol = {});

// Sasakian-mode bounds: the delta_M-type plane bound, the Ricci bound, and
// the Ricci-tensor PSD bound. Requires f3 = f1 - 1 and h = 0.
std::vector<InequalityReport> check_sasakian_suite(const SubmanifoldPoint& s, const Subspace& pi,
                                                   const Vec& u, const CheckTolerances& tol = {});

// tau - sum tau(L_j) against c(t) ||H||^2 + b(t) f1 for a concrete orthogonal
// tuple; valid per-tuple, so exact mode.
InequalityReport check_delta_tuple(const SubmanifoldPoint& s, const TupleSpec& t,
                                   const std::vector<Subspace>& l,
                                   const CheckTolerances& tol = {});

// Detects the diag(a, b, (a+b)I) / pi-block trace-free shape-operator
// structure of the fundamental-inequality equality case.
EqualityFormReport detect_equality_form_basic(const SubmanifoldPoint& s, const Subspace& pi,
                                              const CheckTolerances& tol = {});

// Detects the block-diagonal equal-trace structure of the delta-tuple
// equality case over the frame-aligned partition.
EqualityFormReport detect_equality_form_delta(const SubmanifoldPoint& s, const TupleSpec& t,
                                              const CheckTolerances& tol = {});

// The algebraic lemma behind every bound: given a_1..a_n, a_{n+1} with
// (sum a_i)^2/(n-1) = sum a_i^2 + a_{n+1}, then 2 a_1 a_2 >= a_{n+1} with
// equality iff a_1 + a_2 = a_3 = ... = a_n.
ChenLemmaResult chen_lemma_check(const std::vector<double>& a);

// True when the instance is in Sasakian mode: f3 = f1 - 1 and h = 0.
bool sasakian_mode(const SubmanifoldPoint& s);

}  // namespace chen
