#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "chenbounds/error.hpp"
#include "chenbounds/rng.hpp"

namespace chen {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// All geometry lives in orthonormal coordinates: the metric is the identity
// and inner products are plain dot products.

inline constexpr double kOrthoTol = 1e-12;   // orthonormality of constructed bases
inline constexpr double kRankTol = 1e-10;    // pivot tolerance for rank decisions
inline constexpr int kMaxDim = 64;           // desk scale

// Exactly symmetric square operator: entries(i,j) == entries(j,i) bitwise.
class SymOp {
 public:
  SymOp() = default;
  explicit SymOp(const Mat& a);
  static SymOp zero(int dim) { return SymOp(Mat::Zero(dim, dim)); }

  const Mat& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  double trace() const { return m_.trace(); }
  double frobenius_sq() const { return m_.squaredNorm(); }

 private:
  Mat m_;
};

// Exactly antisymmetric square operator.
class SkewOp {
 public:
  SkewOp() = default;
  explicit SkewOp(const Mat& a);

  const Mat& mat() const { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }

 private:
  Mat m_;
};

// Orthonormal-spanned subspace; columns of basis() are the basis vectors.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(const Mat& orthonormal_basis);

  const Mat& basis() const { return b_; }
  int dim() const { return static_cast<int>(b_.cols()); }
  int ambient_dim() const { return static_cast<int>(b_.rows()); }
  Vec basis_vector(int i) const { return b_.col(i); }

 private:
  Mat b_;
};

// Modified Gram-Schmidt with one reorthogonalization pass.
// Throws RankDeficient when the numerical rank is below the vector count.
Subspace orthonormalize(const std::vector<Vec>& vs);
Mat orthonormalize_columns(const Mat& a);

double min_eigenvalue(const SymOp& a);
double min_eigenvalue(const Mat& symmetric);

// Haar-ish random orthogonal matrix, deterministic for a fixed seed.
Mat random_orthogonal(int dim, std::uint64_t seed);
Mat random_orthogonal(int dim, Rng& rng);

// max |B^T B - I| over entries
double orthonormality_residual(const Mat& basis);

}  // namespace chen
