#pragma once

#include <vector>

#include "chenbounds/ambient.hpp"

namespace chen {

// An n-dimensional C-totally real tangent plane inside an AmbientPoint, with
// its full second fundamental form. Frames are ambient-coordinate columns;
// the last normal-frame vector is xi. sigma is stored per normal direction,
// sigma[r](i,j) = <sigma(e_i,e_j), N_r>, and the xi slice is pinned to the
// tangential part of phi h.
class SubmanifoldPoint {
 public:
  const AmbientPoint& ambient() const { return ambient_; }
  int n() const { return n_; }
  int num_normals() const { return static_cast<int>(normal_frame_.cols()); }
  int xi_index() const { return num_normals() - 1; }
  const Mat& tangent_frame() const { return tangent_frame_; }
  const Mat& normal_frame() const { return normal_frame_; }
  const std::vector<SymOp>& sigma() const { return sigma_; }
  const SymOp& shape_operator(int r) const { return sigma_.at(r); }

  // Intrinsic curvature in tangent-frame coordinates (Gauss equation),
  // precomputed at construction. at(i,j,k,l) = R(e_i,e_j,e_k,e_l).
  double curv(int i, int j, int k, int l) const {
    return curv_[((i * n_ + j) * n_ + k) * n_ + l];
  }
  // K(e_i ^ e_j)
  double frame_sectional(int i, int j) const { return curv(i, j, j, i); }

  friend SubmanifoldPoint build_submanifold(const AmbientPoint& ambient, const Mat& tangent_frame,
                                            const Mat& normal_frame,
                                            const std::vector<Mat>& sigma_free);

 private:
  AmbientPoint ambient_;
  int n_ = 0;
  Mat tangent_frame_;
  Mat normal_frame_;
  std::vector<SymOp> sigma_;
  std::vector<double> curv_;
};

// sigma_free supplies one n x n slice per non-xi normal, in normal-frame
// order; the xi slice is derived from A_xi = (phi h)^T.
SubmanifoldPoint build_submanifold(const AmbientPoint& ambient, const Mat& tangent_frame,
                                   const Mat& normal_frame, const std::vector<Mat>& sigma_free);

// (h^T)_ij = <h e_i, e_j> and ((phi h)^T)_ij = <phi h e_i, e_j>, both n x n.
SymOp tangential_h(const SubmanifoldPoint& s);
SymOp tangential_phih(const SubmanifoldPoint& s);

struct MeanCurvature {
  Vec h;          // normal-frame coordinates of H
  double norm_sq; // ||H||^2
};
MeanCurvature mean_curvature(const SubmanifoldPoint& s);

// R(X,Y,Z,W) of the submanifold for tangent ambient vectors; throws NotTangent
// when an input leaves span(tangent_frame).
double induced_curvature(const SubmanifoldPoint& s, const Vec& x, const Vec& y, const Vec& z,
                         const Vec& w);

double sigma_norm_sq(const SubmanifoldPoint& s);

// Kernel of X -> (A_r X)_r by singular-value thresholding at 1e-9, expressed
// in tangent-frame coordinates. A trivial kernel yields dim 0 (empty basis).
Mat relative_null_space(const SubmanifoldPoint& s);

// Rotates the normal frame (xi fixed) so that the first normal direction is
// parallel to H; identity gauge when ||H|| <= tol within the xi-complement.
SubmanifoldPoint with_mean_curvature_gauge(const SubmanifoldPoint& s, double tol = 1e-12);

// Rebuilds the instance with the normal frame conjugated by q (orthogonal,
// num_normals x num_normals, must fix the xi column).
SubmanifoldPoint rotate_normal_frame(const SubmanifoldPoint& s, const Mat& q);

}  // namespace chen
