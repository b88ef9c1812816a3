#include "chenbounds/inequalities.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace chen {

namespace {

struct TangentialParts {
  Mat ht;      // h^T
  Mat phiht;   // (phi h)^T
  double tr_ht, tr_phiht, ht_sq, phiht_sq;
};

TangentialParts tangential_parts(const SubmanifoldPoint& s) {
  TangentialParts tp;
  tp.ht = tangential_h(s).mat();
  tp.phiht = tangential_phih(s).mat();
  tp.tr_ht = tp.ht.trace();
  tp.tr_phiht = tp.phiht.trace();
  tp.ht_sq = tp.ht.squaredNorm();
  tp.phiht_sq = tp.phiht.squaredNorm();
  return tp;
}

// The f51/f52 brace terms shared by the scalar identity and the mean-curvature bounds.
double f5_braces(const FCoefficients& f, const TangentialParts& tp) {
  return f.f51 * (tp.tr_ht * tp.tr_ht - tp.ht_sq) - f.f52 * (tp.phiht_sq - tp.tr_phiht * tp.tr_phiht);
}

Mat restrict_to(const Mat& op, const Mat& basis) { return basis.transpose() * op * basis; }

Subspace full_tangent(const SubmanifoldPoint& s) {
  return Subspace(Mat::Identity(s.n(), s.n()));
}

}  // namespace

bool sasakian_mode(const SubmanifoldPoint& s) {
  return classify_sasakian(s.ambient().f) &&
         s.ambient().h.mat().cwiseAbs().maxCoeff() <= 1e-12;
}

InequalityReport check_scalar_identity(const SubmanifoldPoint& s, const CheckTolerances& tol) {
  const int n = s.n();
  const auto tp = tangential_parts(s);
  const FCoefficients& f = s.ambient().f;
  InequalityReport rep;
  rep.name = "scalar-identity";
  rep.tol = tol;
  rep.lhs = 2.0 * scalar_curvature(s);  // Gauss-summed sectional curvatures
  rep.rhs = n * (n - 1.0) * f.f1 + 2.0 * (n - 1.0) * f.f4 * tp.tr_ht + f5_braces(f, tp) +
            n * n * mean_curvature(s).norm_sq - sigma_norm_sq(s);
  rep.slack = rep.rhs - rep.lhs;
  rep.equality = std::abs(rep.slack) <= tol.eq_tol * (1.0 + std::abs(rep.lhs));
  rep.mode = CheckMode::Exact;
  return rep;
}

InequalityReport check_chen_fundamental(const SubmanifoldPoint& s, const Subspace& pi,
                                        const CheckTolerances& tol) {
  const int n = s.n();
  if (n < 3) throw Error(Errc::DimensionTooSmall, "fundamental inequality needs n >= 3");
  if (pi.dim() != 2 || pi.ambient_dim() != n)
    throw Error(Errc::BadPlane, "pi must be a plane section of the tangent space");
  const auto tp = tangential_parts(s);
  const FCoefficients& f = s.ambient().f;
  const double tau = scalar_curvature(s);
  const double h2 = mean_curvature(s).norm_sq;
  Mat h_pi = restrict_to(tp.ht, pi.basis());
  Mat phih_pi = restrict_to(tp.phiht, pi.basis());

  InequalityReport rep;
  rep.name = "fundamental-plane";
  rep.tol = tol;
  rep.lhs = tau - sectional_curvature(s, pi);
  rep.rhs = n * n * (n - 2.0) / (2.0 * (n - 1.0)) * h2 + (n + 1.0) * (n - 2.0) / 2.0 * f.f1 +
            f.f4 * ((n - 1.0) * tp.tr_ht - h_pi.trace()) +
            0.5 * f.f51 *
                (tp.tr_ht * tp.tr_ht - tp.ht_sq - 2.0 * h_pi.determinant()) -
            0.5 * f.f52 *
                (tp.phiht_sq - tp.tr_phiht * tp.tr_phiht + 2.0 * phih_pi.determinant());
  rep.slack = rep.rhs - rep.lhs;
  rep.equality = std::abs(rep.slack) <= tol.eq_tol;
  rep.mode = CheckMode::Exact;
  rep.witness_subspace = pi.basis();
  return rep;
}

InequalityReport check_ricci_bound(const SubmanifoldPoint& s, const Vec& u,
                                   const CheckTolerances& tol) {
  const int n = s.n();
  if (n < 3) throw Error(Errc::DimensionTooSmall, "Ricci bound needs n >= 3");
  if (u.size() != n || std::abs(u.norm() - 1.0) > 1e-9)
    throw Error(Errc::NotUnit, "U must be a unit tangent-frame vector");
  const auto tp = tangential_parts(s);
  const FCoefficients& f = s.ambient().f;
  Vec htu = tp.ht * u, phihtu = tp.phiht * u;

  InequalityReport rep;
  rep.name = "ricci-bound";
  rep.tol = tol;
  rep.lhs = k_ricci(s, full_tangent(s), u);
  rep.rhs = 0.25 * n * n * mean_curvature(s).norm_sq + (n - 1.0) * f.f1 +
            f.f4 * (tp.tr_ht + (n - 2.0) * u.dot(htu)) +
            f.f51 * (tp.tr_ht * u.dot(htu) - htu.squaredNorm()) +
            f.f52 * (tp.tr_phiht * u.dot(phihtu) - phihtu.squaredNorm());
  rep.slack = rep.rhs - rep.lhs;
  rep.equality = std::abs(rep.slack) <= tol.eq_tol;
  rep.mode = CheckMode::Exact;
  rep.witness_vector = u;
  return rep;
}

InequalityReport check_mean_vs_scalar(const SubmanifoldPoint& s, const CheckTolerances& tol) {
  const int n = s.n();
  if (n < 3) throw Error(Errc::DimensionTooSmall, "mean-vs-scalar bound needs n >= 3");
  const auto tp = tangential_parts(s);
  const FCoefficients& f = s.ambient().f;
  InequalityReport rep;
  rep.name = "mean-scalar";
  rep.tol = tol;
  rep.lhs = 2.0 * scalar_curvature(s) - n * (n - 1.0) * f.f1 - 2.0 * (n - 1.0) * f.f4 * tp.tr_ht -
            f5_braces(f, tp);
  rep.rhs = n * (n - 1.0) * mean_curvature(s).norm_sq;
  rep.slack = rep.rhs - rep.lhs;
  rep.equality = std::abs(rep.slack) <= tol.eq_tol;
  rep.mode = CheckMode::Exact;
  return rep;
}

InequalityReport check_theta_bound(const SubmanifoldPoint& s, int k, const SearchBudget& budget,
                                   const CheckTolerances& tol) {
  const int n = s.n();
  if (n < 3) throw Error(Errc::DimensionTooSmall, "theta bound needs n >= 3");
  const auto tp = tangential_parts(s);
  const FCoefficients& f = s.ambient().f;
  ExtremumResult theta = theta_k(s, k, budget);

  InequalityReport rep;
  rep.name = "theta-bound";
  rep.tol = tol;
  rep.lhs = n * (n - 1.0) * theta.value - n * (n - 1.0) * f.f1 -
            2.0 * (n - 1.0) * f.f4 * tp.tr_ht - f5_braces(f, tp);
  rep.rhs = n * (n - 1.0) * mean_curvature(s).norm_sq;
  rep.slack = rep.rhs - rep.lhs;
  rep.witness_vector = theta.witness_vector;
  // 2 tau >= n(n-1) theta_k, so the scalar-curvature-form lhs dominates the theta lhs.
  rep.exact_chain_lhs = 2.0 * scalar_curvature(s) - n * (n - 1.0) * f.f1 -
                        2.0 * (n - 1.0) * f.f4 * tp.tr_ht - f5_braces(f, tp);
  if (theta.certified == Certified::ExactAnalytic) {
    rep.mode = CheckMode::Exact;
    rep.equality = std::abs(rep.slack) <= tol.eq_tol;
  } else {
    rep.mode = CheckMode::Conservative;
    rep.equality = false;  // conservative reports only record values
  }
  return rep;
}

std::vector<InequalityReport> check_sasakian_suite(const SubmanifoldPoint& s, const Subspace& pi,
                                                   const Vec& u, const CheckTolerances& tol) {
  const int n = s.n();
  if (!sasakian_mode(s))
    throw Error(Errc::NotSasakianMode, "requires f3 = f1 - 1 and h = 0");
  if (n < 3) throw Error(Errc::DimensionTooSmall, "Sasakian suite needs n >= 3");
  const double f1 = s.ambient().f.f1;
  const double h2 = mean_curvature(s).norm_sq;
  std::vector<InequalityReport> out;

  InequalityReport rplane;
  rplane.name = "sasakian-plane";
  rplane.tol = tol;
  rplane.lhs = scalar_curvature(s) - sectional_curvature(s, pi);
  rplane.rhs = n * n * (n - 2.0) / (2.0 * (n - 1.0)) * h2 + (n + 1.0) * (n - 2.0) / 2.0 * f1;
  rplane.slack = rplane.rhs - rplane.lhs;
  rplane.equality = std::abs(rplane.slack) <= tol.eq_tol;
  rplane.witness_subspace = pi.basis();
  out.push_back(rplane);

  InequalityReport rric;
  rric.name = "sasakian-ricci";
  rric.tol = tol;
  rric.lhs = k_ricci(s, full_tangent(s), u);
  rric.rhs = 0.25 * n * n * h2 + (n - 1.0) * f1;
  rric.slack = rric.rhs - rric.lhs;
  rric.equality = std::abs(rric.slack) <= tol.eq_tol;
  rric.witness_vector = u;
  out.push_back(rric);

  InequalityReport rpsd;
  rpsd.name = "sasakian-psd";
  rpsd.tol = tol;
  rpsd.lhs = 0.0;
  Mat psd = (n * n * h2 + 4.0 * (n - 1.0) * f1) * Mat::Identity(n, n) -
            4.0 * ricci_tensor(s).mat();
  rpsd.rhs = min_eigenvalue(psd);
  rpsd.slack = rpsd.rhs;
  rpsd.equality = std::abs(rpsd.slack) <= tol.eq_tol;
  out.push_back(rpsd);
  return out;
}

InequalityReport check_delta_tuple(const SubmanifoldPoint& s, const TupleSpec& t,
                                   const std::vector<Subspace>& l, const CheckTolerances& tol) {
  const int n = s.n();
  if (!sasakian_mode(s))
    throw Error(Errc::NotSasakianMode, "requires f3 = f1 - 1 and h = 0");
  if (!tuple_in_s(t, n)) throw Error(Errc::TupleNotInS, "tuple " + t.str() + " not in S(n)");
  if (static_cast<int>(l.size()) != t.k())
    throw Error(Errc::BadTuple, "tuple length does not match subspace count");
  for (int j = 0; j < t.k(); ++j) {
    if (l[j].dim() != t.dims[j] || l[j].ambient_dim() != n)
      throw Error(Errc::BadTuple, "subspace dimensions do not match the tuple");
    for (int i = 0; i < j; ++i)
      if ((l[i].basis().transpose() * l[j].basis()).cwiseAbs().maxCoeff() > 1e-10)
        throw Error(Errc::BadTuple, "subspaces are not mutually orthogonal");
  }
  CB cb = constants_c_b(n, t);
  InequalityReport rep;
  rep.name = "delta-tuple";
  rep.tol = tol;
  rep.lhs = scalar_curvature(s);
  for (const Subspace& sub : l) rep.lhs -= subspace_scalar_curvature(s, sub);
  rep.rhs = cb.c * mean_curvature(s).norm_sq + cb.b * s.ambient().f.f1;
  rep.slack = rep.rhs - rep.lhs;
  rep.equality = std::abs(rep.slack) <= tol.eq_tol;
  rep.mode = CheckMode::Exact;
  if (t.k() > 0) {
    rep.witness_subspace.resize(n, t.sum());
    int col = 0;
    for (const Subspace& sub : l) {
      rep.witness_subspace.middleCols(col, sub.dim()) = sub.basis();
      col += sub.dim();
    }
  }
  return rep;
}

namespace {

Mat tangent_complement(const Subspace& pi, int n) {
  Mat b(n, n - 2);
  int filled = 0;
  for (int j = 0; j < n && filled < n - 2; ++j) {
    Vec cand = Vec::Zero(n);
    cand(j) = 1.0;
    cand -= pi.basis_vector(0).dot(cand) * pi.basis_vector(0);
    cand -= pi.basis_vector(1).dot(cand) * pi.basis_vector(1);
    for (int c = 0; c < filled; ++c) cand -= b.col(c).dot(cand) * b.col(c);
    double norm = cand.norm();
    if (norm > 1e-6) b.col(filled++) = cand / norm;
  }
  for (int j = 0; j < n - 2; ++j) {
    Vec cand = b.col(j);
    cand -= pi.basis_vector(0).dot(cand) * pi.basis_vector(0);
    cand -= pi.basis_vector(1).dot(cand) * pi.basis_vector(1);
    for (int c = 0; c < j; ++c) cand -= b.col(c).dot(cand) * b.col(c);
    b.col(j) = cand / cand.norm();
  }
  return b;
}

EqualityFormReport try_basic_form(const SubmanifoldPoint& s, const Subspace& pi) {
  const int n = s.n();
  const int p = s.num_normals();
  const Mat a1 = s.shape_operator(0).mat();

  // e1, e2: diagonalize A_{n+1} on pi; e3..en: diagonalize it on pi-perp.
  Mat basis(n, n);
  {
    Mat block = pi.basis().transpose() * a1 * pi.basis();
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (block + block.transpose())));
    basis.leftCols(2) = pi.basis() * es.eigenvectors();
  }
  if (n > 2) {
    Mat comp = tangent_complement(pi, n);
    Mat block = comp.transpose() * a1 * comp;
    Eigen::SelfAdjointEigenSolver<Mat> es(Mat(0.5 * (block + block.transpose())));
    basis.rightCols(n - 2) = comp * es.eigenvectors();
  }

  Mat ahat = basis.transpose() * a1 * basis;
  const double a = ahat(0, 0), b = ahat(1, 1);
  double residual = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j && i >= 2) residual = std::max(residual, std::abs(ahat(i, i) - (a + b)));
      if (i != j) residual = std::max(residual, std::abs(ahat(i, j)));
    }

  EqualityFormReport rep;
  rep.params = {a, b};
  for (int r = 1; r < p; ++r) {
    Mat m = basis.transpose() * s.shape_operator(r).mat() * basis;
    residual = std::max(residual, std::abs(m(0, 0) + m(1, 1)));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i >= 2 || j >= 2) residual = std::max(residual, std::abs(m(i, j)));
    rep.params.push_back(m(0, 0));
    rep.params.push_back(m(0, 1));
  }
  rep.residual = residual;
  rep.tangent_basis = basis;
  return rep;
}

}  // namespace

EqualityFormReport detect_equality_form_basic(const SubmanifoldPoint& s, const Subspace& pi,
                                              const CheckTolerances& tol) {
  const int n = s.n();
  if (n < 3) throw Error(Errc::DimensionTooSmall, "equality-form detector needs n >= 3");
  if (pi.dim() != 2 || pi.ambient_dim() != n)
    throw Error(Errc::BadPlane, "pi must be a plane section of the tangent space");
  const int p = s.num_normals();

  MeanCurvature mc = mean_curvature(s);
  Vec hperp = mc.h;
  hperp(p - 1) = 0.0;
  std::vector<SubmanifoldPoint> candidates;
  if (hperp.norm() > 1e-9) {
    candidates.push_back(with_mean_curvature_gauge(s));
  } else {
    // H = 0: the gauge is undetermined, try every non-xi normal as e_{n+1}.
    for (int j = 0; j < p - 1; ++j) {
      Mat q = Mat::Identity(p, p);
      if (j != 0) {
        q(0, 0) = q(j, j) = 0.0;
        q(0, j) = q(j, 0) = 1.0;
      }
      candidates.push_back(rotate_normal_frame(s, q));
    }
  }

  EqualityFormReport best;
  best.residual = std::numeric_limits<double>::infinity();
  for (const SubmanifoldPoint& cand : candidates) {
    EqualityFormReport rep = try_basic_form(cand, pi);
    if (rep.residual < best.residual) best = rep;
  }
  best.matched = best.residual <= tol.form_tol;
  return best;
}

EqualityFormReport detect_equality_form_delta(const SubmanifoldPoint& s, const TupleSpec& t,
                                              const CheckTolerances& tol) {
  const int n = s.n();
  if (!tuple_in_s(t, n)) throw Error(Errc::TupleNotInS, "tuple " + t.str() + " not in S(n)");
  const int span = t.sum();
  EqualityFormReport rep;
  double residual = 0.0;
  for (int r = 0; r < s.num_normals(); ++r) {
    const Mat& m = s.shape_operator(r).mat();
    // frame-aligned partition: consecutive blocks, then the a_r I tail
    std::vector<int> block_of(n, -1);
    int off = 0;
    for (int b = 0; b < t.k(); ++b)
      for (int c = 0; c < t.dims[b]; ++c) block_of[off++] = b;
    double a_r;
    if (span < n) {
      a_r = 0.0;
      for (int i = span; i < n; ++i) a_r += m(i, i);
      a_r /= (n - span);
    } else {
      Mat blk = m.topLeftCorner(t.dims[0], t.dims[0]);
      a_r = blk.trace();
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        bool same_block = block_of[i] >= 0 && block_of[i] == block_of[j];
        bool tail_diag = i == j && block_of[i] < 0;
        if (same_block) continue;
        if (tail_diag)
          residual = std::max(residual, std::abs(m(i, i) - a_r));
        else
          residual = std::max(residual, std::abs(m(i, j)));
      }
    off = 0;
    for (int b = 0; b < t.k(); ++b) {
      double trace = 0.0;
      for (int c = 0; c < t.dims[b]; ++c) trace += m(off + c, off + c);
      residual = std::max(residual, std::abs(trace - a_r));
      off += t.dims[b];
    }
    rep.params.push_back(a_r);
  }
  rep.residual = residual;
  rep.matched = residual <= tol.form_tol;
  return rep;
}

ChenLemmaResult chen_lemma_check(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  if (n < 2) throw Error(Errc::BadDimension, "need at least 3 values");
  double sum = 0.0, sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    sum += a[i];
    sum_sq += a[i] * a[i];
  }
  double hyp = sum * sum / (n - 1.0) - sum_sq - a[n];
  if (std::abs(hyp) > 1e-12 * (1.0 + sum_sq + std::abs(a[n])))
    throw Error(Errc::HypothesisViolated, "hypothesis residual " + std::to_string(hyp));
  ChenLemmaResult res;
  res.margin = 2.0 * a[0] * a[1] - a[n];
  res.holds = res.margin >= -1e-12;
  res.equality = true;
  for (int i = 2; i < n; ++i)
    if (std::abs(a[0] + a[1] - a[i]) > 1e-9) res.equality = false;
  return res;
}

}  // namespace chen
