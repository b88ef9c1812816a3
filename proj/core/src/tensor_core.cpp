#include "chenbounds/tensor_core.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace chen {

SymOp::SymOp(const Mat& a) {
  if (a.rows() != a.cols()) throw Error(Errc::BadDimension, "SymOp requires a square array");
  if (a.rows() > kMaxDim) throw Error(Errc::DimensionTooLarge, "dimension above desk-scale cap");
  m_ = a;
  for (int i = 0; i < m_.rows(); ++i)
    for (int j = 0; j < i; ++j) {
      double v = 0.5 * (m_(i, j) + m_(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
}

SkewOp::SkewOp(const Mat& a) {
  if (a.rows() != a.cols()) throw Error(Errc::BadDimension, "SkewOp requires a square array");
  if (a.rows() > kMaxDim) throw Error(Errc::DimensionTooLarge, "dimension above desk-scale cap");
  m_ = a;
  for (int i = 0; i < m_.rows(); ++i) {
    m_(i, i) = 0.0;
    for (int j = 0; j < i; ++j) {
      double v = 0.5 * (m_(i, j) - m_(j, i));
      m_(i, j) = v;
      m_(j, i) = -v;
    }
  }
}

Subspace::Subspace(const Mat& orthonormal_basis) : b_(orthonormal_basis) {
  if (b_.cols() < 1 || b_.cols() > b_.rows())
    throw Error(Errc::BadDimension, "subspace dimension out of range");
  if (orthonormality_residual(b_) > kOrthoTol)
    throw Error(Errc::BadFrame, "basis is not orthonormal to 1e-12");
}

double orthonormality_residual(const Mat& basis) {
  Mat g = basis.transpose() * basis;
  g.diagonal().array() -= 1.0;
  return g.cwiseAbs().maxCoeff();
}

Mat orthonormalize_columns(const Mat& a) {
  const int d = static_cast<int>(a.rows());
  const int k = static_cast<int>(a.cols());
  if (k > d) throw Error(Errc::RankDeficient, "more vectors than the ambient dimension");
  Mat q = a;
  for (int pass = 0; pass < 2; ++pass) {
    for (int j = 0; j < k; ++j) {
      for (int i = 0; i < j; ++i) q.col(j) -= q.col(i).dot(q.col(j)) * q.col(i);
      double norm = q.col(j).norm();
      double scale = (pass == 0) ? a.col(j).norm() : 1.0;
      if (norm <= kRankTol * (scale > 0 ? scale : 1.0))
        throw Error(Errc::RankDeficient, "numerical rank below vector count");
      q.col(j) /= norm;
    }
  }
  return q;
}

Subspace orthonormalize(const std::vector<Vec>& vs) {
  if (vs.empty()) throw Error(Errc::BadDimension, "empty vector list");
  const int d = static_cast<int>(vs.front().size());
  Mat a(d, static_cast<int>(vs.size()));
  for (int j = 0; j < a.cols(); ++j) {
    if (vs[j].size() != d) throw Error(Errc::DimensionMismatch, "mixed vector lengths");
    a.col(j) = vs[j];
  }
  return Subspace(orthonormalize_columns(a));
}

double min_eigenvalue(const Mat& symmetric) {
  Eigen::SelfAdjointEigenSolver<Mat> es(symmetric, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

double min_eigenvalue(const SymOp& a) { return min_eigenvalue(a.mat()); }

Mat random_orthogonal(int dim, Rng& rng) {
  if (dim < 1) throw Error(Errc::BadDimension, "dim must be >= 1");
  if (dim > kMaxDim) throw Error(Errc::DimensionTooLarge, "dimension above desk-scale cap");
  for (;;) {
    Mat a(dim, dim);
    for (int j = 0; j < dim; ++j)
      for (int i = 0; i < dim; ++i) a(i, j) = rng.gaussian();
    try {
      return orthonormalize_columns(a);
    } catch (const Error&) {
      // measure-zero degenerate draw; redraw
    }
  }
}

Mat random_orthogonal(int dim, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthogonal(dim, rng);
}

}  // namespace chen
