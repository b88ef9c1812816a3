#include "chenbounds/submanifold.hpp"

#include <Eigen/SVD>
#include <cmath>

namespace chen {

SubmanifoldPoint build_submanifold(const AmbientPoint& ambient, const Mat& tangent_frame,
                                   const Mat& normal_frame, const std::vector<Mat>& sigma_free) {
  const int d = ambient.dim();
  const int n = static_cast<int>(tangent_frame.cols());
  const int p = static_cast<int>(normal_frame.cols());
  if (n < 2) throw Error(Errc::DimensionTooSmall, "submanifold dimension must be >= 2");
  if (tangent_frame.rows() != d || normal_frame.rows() != d || n + p != d)
    throw Error(Errc::BadFrame, "frames must jointly span the ambient space");

  Mat joint(d, d);
  joint.leftCols(n) = tangent_frame;
  joint.rightCols(p) = normal_frame;
  if (orthonormality_residual(joint) > kOrthoTol)
    throw Error(Errc::BadFrame, "joint frame is not orthonormal to 1e-12");
  if ((normal_frame.col(p - 1) - ambient.xi()).cwiseAbs().maxCoeff() > kOrthoTol)
    throw Error(Errc::BadFrame, "last normal vector must be xi");

  double eta_res = tangent_frame.row(d - 1).cwiseAbs().maxCoeff();
  if (eta_res > kStructureTol)
    throw Error(Errc::NotCTotallyReal,
                "eta(e_i) != 0 on the tangent frame, max residual " + std::to_string(eta_res));
  Mat phi_tt = tangent_frame.transpose() * ambient.phi.mat() * tangent_frame;
  double anti_res = phi_tt.cwiseAbs().maxCoeff();
  if (anti_res > kStructureTol)
    throw Error(Errc::NotCTotallyReal,
                "<phi e_i, e_j> != 0 on the tangent frame, max residual " + std::to_string(anti_res));

  if (static_cast<int>(sigma_free.size()) != p - 1)
    throw Error(Errc::BadFrame, "sigma_free must have one slice per non-xi normal");

  SubmanifoldPoint s;
  s.ambient_ = ambient;
  s.n_ = n;
  s.tangent_frame_ = tangent_frame;
  s.normal_frame_ = normal_frame;
  s.sigma_.reserve(p);
  for (const Mat& a : sigma_free) {
    if (a.rows() != n || a.cols() != n)
      throw Error(Errc::DimensionMismatch, "sigma slice must be n x n");
    if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw Error(Errc::AsymmetricSigma, "sigma slice is not symmetric");
    s.sigma_.emplace_back(a);
  }
  // A_xi = (phi h)^T, eq-constrained rather than free data
  Mat phih = ambient.phi.mat() * ambient.h.mat();
  s.sigma_.emplace_back(Mat(tangent_frame.transpose() * phih * tangent_frame));

  s.curv_.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = ambient_curvature(ambient, tangent_frame.col(i), tangent_frame.col(j),
                                       tangent_frame.col(k), tangent_frame.col(l));
          for (const SymOp& sig : s.sigma_)
            v += sig(i, l) * sig(j, k) - sig(i, k) * sig(j, l);
          s.curv_[((static_cast<std::size_t>(i) * n + j) * n + k) * n + l] = v;
        }
  return s;
}

SymOp tangential_h(const SubmanifoldPoint& s) {
  const Mat& t = s.tangent_frame();
  return SymOp(Mat(t.transpose() * s.ambient().h.mat() * t));
}

SymOp tangential_phih(const SubmanifoldPoint& s) {
  const Mat& t = s.tangent_frame();
  return SymOp(Mat(t.transpose() * s.ambient().phi.mat() * s.ambient().h.mat() * t));
}

MeanCurvature mean_curvature(const SubmanifoldPoint& s) {
  const int p = s.num_normals();
  MeanCurvature mc;
  mc.h = Vec::Zero(p);
  for (int r = 0; r < p; ++r) mc.h(r) = s.sigma()[r].trace() / s.n();
  mc.norm_sq = mc.h.squaredNorm();
  return mc;
}

double induced_curvature(const SubmanifoldPoint& s, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w) {
  const int d = s.ambient().dim();
  if (x.size() != d || y.size() != d || z.size() != d || w.size() != d)
    throw Error(Errc::DimensionMismatch, "inputs must have ambient dimension");
  const Mat& t = s.tangent_frame();
  const int n = s.n();
  Vec cx = t.transpose() * x, cy = t.transpose() * y, cz = t.transpose() * z,
      cw = t.transpose() * w;
  auto tangency = [&](const Vec& v, const Vec& c) {
    return (v - t * c).norm() <= 1e-9 * (1.0 + v.norm());
  };
  if (!tangency(x, cx) || !tangency(y, cy) || !tangency(z, cz) || !tangency(w, cw))
    throw Error(Errc::NotTangent, "input leaves span(tangent_frame)");
  double acc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
          acc += cx(i) * cy(j) * cz(k) * cw(l) * s.curv(i, j, k, l);
  return acc;
}

double sigma_norm_sq(const SubmanifoldPoint& s) {
  double acc = 0.0;
  for (const SymOp& sig : s.sigma()) acc += sig.frobenius_sq();
  return acc;
}

Mat relative_null_space(const SubmanifoldPoint& s) {
  const int n = s.n();
  const int p = s.num_normals();
  Mat stacked(p * n, n);
  for (int r = 0; r < p; ++r) stacked.middleRows(r * n, n) = s.sigma()[r].mat();
  Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (svd.singularValues()(i) > 1e-9) ++rank;
  return Mat(svd.matrixV().rightCols(n - rank));
}

SubmanifoldPoint rotate_normal_frame(const SubmanifoldPoint& s, const Mat& q) {
  const int p = s.num_normals();
  if (q.rows() != p || q.cols() != p)
    throw Error(Errc::DimensionMismatch, "gauge must be num_normals x num_normals");
  if (orthonormality_residual(q) > 1e-10) throw Error(Errc::BadFrame, "gauge is not orthogonal");
  Vec exi = Vec::Zero(p);
  exi(p - 1) = 1.0;
  if ((q.col(p - 1) - exi).cwiseAbs().maxCoeff() > 1e-10 ||
      (q.row(p - 1).transpose() - exi).cwiseAbs().maxCoeff() > 1e-10)
    throw Error(Errc::BadFrame, "gauge must fix the xi direction");

  Mat nf = s.normal_frame() * q;
  nf.col(p - 1) = s.ambient().xi();
  std::vector<Mat> free_slices;
  free_slices.reserve(p - 1);
  for (int c = 0; c < p - 1; ++c) {
    Mat slice = Mat::Zero(s.n(), s.n());
    for (int r = 0; r < p; ++r) slice += q(r, c) * s.sigma()[r].mat();
    free_slices.push_back(slice);
  }
  return build_submanifold(s.ambient(), s.tangent_frame(), nf, free_slices);
}

SubmanifoldPoint with_mean_curvature_gauge(const SubmanifoldPoint& s, double tol) {
  const int p = s.num_normals();
  MeanCurvature mc = mean_curvature(s);
  Vec hperp = mc.h;
  hperp(p - 1) = 0.0;  // xi stays last; gauge acts on the xi-complement only
  double norm = hperp.norm();
  if (norm <= tol) return s;

  Mat q = Mat::Zero(p, p);
  q.col(0).head(p - 1) = hperp.head(p - 1) / norm;
  int filled = 1;
  for (int j = 0; j < p - 1 && filled < p - 1; ++j) {
    Vec cand = Vec::Zero(p);
    cand(j) = 1.0;
    for (int c = 0; c < filled; ++c) cand -= q.col(c).dot(cand) * q.col(c);
    double cn = cand.norm();
    if (cn > 1e-8) q.col(filled++) = cand / cn;
  }
  if (filled != p - 1) throw Error(Errc::BadFrame, "failed to complete normal gauge");
  q(p - 1, p - 1) = 1.0;
  q.leftCols(p - 1) = orthonormalize_columns(q.leftCols(p - 1));
  return rotate_normal_frame(s, q);
}

}  // namespace chen
