#include "chenbounds/invariants.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

namespace chen {

namespace {

constexpr std::uint64_t kTagPlane = 0x706c616e65ULL;
constexpr std::uint64_t kTagTuple = 0x7475706c65ULL;
constexpr std::uint64_t kTagTheta = 0x7468657461ULL;

// R(a,b,c,d) contracted in tangent-frame coordinates.
double curv4(const SubmanifoldPoint& s, const Vec& a, const Vec& b, const Vec& c, const Vec& d) {
  const int n = s.n();
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    if (a(i) == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      if (b(j) == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += a(i) * b(j) * c(k) * d(l) * s.curv(i, j, k, l);
    }
  }
  return acc;
}

double plane_k(const SubmanifoldPoint& s, const Vec& u, const Vec& v) {
  return curv4(s, u, v, v, u);
}

// M(u)_jk = sum_{i,l} u_i u_l R(i,j,k,l); K(u,v) = v^T M(u) v.
Mat section_form(const SubmanifoldPoint& s, const Vec& u) {
  const int n = s.n();
  Mat m = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    if (u(i) == 0.0) continue;
    for (int l = 0; l < n; ++l) {
      if (u(l) == 0.0) continue;
      double w = u(i) * u(l);
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) m(j, k) += w * s.curv(i, j, k, l);
    }
  }
  return Mat(0.5 * (m + m.transpose()));
}

// Orthonormal basis of the orthogonal complement of unit u.
Mat complement_basis(const Vec& u) {
  const int n = static_cast<int>(u.size());
  Mat b(n, n - 1);
  int filled = 0;
  for (int j = 0; j < n && filled < n - 1; ++j) {
    Vec cand = Vec::Zero(n);
    cand(j) = 1.0;
    cand -= u.dot(cand) * u;
    for (int c = 0; c < filled; ++c) cand -= b.col(c).dot(cand) * b.col(c);
    double norm = cand.norm();
    if (norm > 1e-6) b.col(filled++) = cand / norm;
  }
  // second pass for tight orthogonality
  for (int j = 0; j < n - 1; ++j) {
    Vec cand = b.col(j);
    cand -= u.dot(cand) * u;
    for (int c = 0; c < j; ++c) cand -= b.col(c).dot(cand) * b.col(c);
    b.col(j) = cand / cand.norm();
  }
  return b;
}

Vec coordinate_vec(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1.0;
  return v;
}

}  // namespace

std::string TupleSpec::str() const {
  std::string out = "(";
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(dims[i]);
  }
  return out + ")";
}

bool tuple_in_s(const TupleSpec& t, int n) {
  if (t.dims.empty()) return true;
  int sum = 0;
  for (int d : t.dims) {
    if (d < 2 || d >= n) return false;
    sum += d;
  }
  return sum <= n && std::is_sorted(t.dims.begin(), t.dims.end());
}

std::vector<TupleSpec> enumerate_tuples(int n) {
  if (n < 2) throw Error(Errc::BadDimension, "n must be >= 2");
  std::vector<TupleSpec> out;
  out.push_back(TupleSpec{});  // empty tuple
  std::vector<int> cur;
  // ascending parts >= 2, each < n, sum <= n
  std::function<void(int, int)> rec = [&](int min_part, int remaining) {
    for (int part = min_part; part < n && part <= remaining; ++part) {
      cur.push_back(part);
      out.push_back(TupleSpec{cur});
      rec(part, remaining - part);
      cur.pop_back();
    }
  };
  rec(2, n);
  std::sort(out.begin(), out.end(), [](const TupleSpec& a, const TupleSpec& b) {
    if (a.k() != b.k()) return a.k() < b.k();
    return a.dims < b.dims;
  });
  return out;
}

CB constants_c_b(int n, const TupleSpec& t) {
  if (!tuple_in_s(t, n)) throw Error(Errc::TupleNotInS, "tuple " + t.str() + " not in S(n)");
  const double k = t.k();
  const double sum = t.sum();
  CB cb;
  cb.c = static_cast<double>(n) * n * (n + k - 1.0 - sum) / (2.0 * (n + k - sum));
  cb.b = 0.5 * n * (n - 1.0);
  for (int d : t.dims) cb.b -= 0.5 * d * (d - 1.0);
  return cb;
}

double sectional_curvature(const SubmanifoldPoint& s, const Subspace& pi) {
  if (pi.dim() != 2 || pi.ambient_dim() != s.n())
    throw Error(Errc::BadDimension, "plane section must be a 2-subspace of the tangent space");
  return plane_k(s, pi.basis_vector(0), pi.basis_vector(1));
}

double scalar_curvature(const SubmanifoldPoint& s) {
  double tau = 0.0;
  for (int i = 0; i < s.n(); ++i)
    for (int j = i + 1; j < s.n(); ++j) tau += s.frame_sectional(i, j);
  return tau;
}

double subspace_scalar_curvature(const SubmanifoldPoint& s, const Subspace& l) {
  if (l.dim() < 2 || l.ambient_dim() != s.n())
    throw Error(Errc::BadDimension, "subspace must have dim >= 2 inside the tangent space");
  double tau = 0.0;
  for (int a = 0; a < l.dim(); ++a)
    for (int b = a + 1; b < l.dim(); ++b) tau += plane_k(s, l.basis_vector(a), l.basis_vector(b));
  return tau;
}

double k_ricci(const SubmanifoldPoint& s, const Subspace& p, const Vec& u) {
  if (p.ambient_dim() != s.n()) throw Error(Errc::BadDimension, "subspace not in tangent space");
  if (std::abs(u.norm() - 1.0) > 1e-9) throw Error(Errc::NotUnit, "U must be a unit vector");
  Vec proj = p.basis() * (p.basis().transpose() * u);
  if ((u - proj).norm() > 1e-9) throw Error(Errc::VectorNotInSubspace, "U must lie in P");
  // orthonormal completion of u inside p
  double ric = 0.0;
  Mat comp(s.n(), p.dim() - 1);
  int filled = 0;
  for (int j = 0; j < p.dim() && filled < p.dim() - 1; ++j) {
    Vec cand = p.basis_vector(j);
    cand -= u.dot(cand) * u;
    for (int c = 0; c < filled; ++c) cand -= comp.col(c).dot(cand) * comp.col(c);
    double norm = cand.norm();
    if (norm > 1e-8) comp.col(filled++) = cand / norm;
  }
  if (filled != p.dim() - 1)
    throw Error(Errc::BadDimension, "failed to complete an orthonormal basis of P");
  for (int c = 0; c < filled; ++c) ric += plane_k(s, u, comp.col(c));
  return ric;
}

SymOp ricci_tensor(const SubmanifoldPoint& s) {
  const int n = s.n();
  Mat ric = Mat::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = 0.0;
      for (int k = 0; k < n; ++k) v += s.curv(i, k, k, j);
      ric(i, j) = v;
    }
  return SymOp(ric);
}

bool is_constant_curvature(const SubmanifoldPoint& s, double tol, double* c0_out) {
  const int n = s.n();
  const double c0 = s.frame_sectional(0, 1);
  double scale = 1.0 + std::abs(c0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double want = c0 * ((i == l && j == k ? 1.0 : 0.0) - (i == k && j == l ? 1.0 : 0.0));
          if (std::abs(s.curv(i, j, k, l) - want) > tol * scale) return false;
        }
  if (c0_out) *c0_out = c0;
  return true;
}

namespace {

// Alternating two-vector descent for sign*K; only ever improves its input.
double refine_plane(const SubmanifoldPoint& s, double sign, Vec& u, Vec& v,
                    const SearchBudget& budget) {
  double val = sign * plane_k(s, u, v);
  for (int it = 0; it < budget.max_iters; ++it) {
    double before = val;
    for (int half = 0; half < 2; ++half) {
      Mat b = complement_basis(u);
      Mat m = sign * (b.transpose() * section_form(s, u) * b);
      Eigen::SelfAdjointEigenSolver<Mat> es(m);
      v = b * es.eigenvectors().col(0);
      val = es.eigenvalues()(0);
      std::swap(u, v);
    }
    if (before - val < budget.step_tol) break;
  }
  return val;
}

ExtremumResult extremal_sectional(const SubmanifoldPoint& s, const SearchBudget& budget,
                                  double sign) {
  const int n = s.n();
  double best = std::numeric_limits<double>::infinity();
  Mat best_plane(n, 2);

  auto consider = [&](const Vec& u, const Vec& v) {
    double val = sign * plane_k(s, u, v);
    if (val < best) {
      best = val;
      best_plane.col(0) = u;
      best_plane.col(1) = v;
    }
    return val;
  };

  std::vector<std::pair<Vec, Vec>> starts;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec u = coordinate_vec(n, i), v = coordinate_vec(n, j);
      consider(u, v);
      starts.emplace_back(u, v);
    }

  Rng base(budget.seed);
  for (int r = 0; r < budget.samples; ++r) {
    Rng g = base.derive(kTagPlane + static_cast<std::uint64_t>(r));
    Vec u = g.unit_vector(n);
    Vec v;
    for (;;) {
      v = g.unit_vector(n);
      v -= u.dot(v) * u;
      double norm = v.norm();
      if (norm > 1e-6) {
        v /= norm;
        break;
      }
    }
    consider(u, v);
    if (r < budget.multistarts) starts.emplace_back(u, v);
  }

  for (auto& [u, v] : starts) {
    double val = refine_plane(s, sign, u, v, budget);
    if (val < best) {
      best = val;
      best_plane.col(0) = u;
      best_plane.col(1) = v;
    }
  }

  ExtremumResult res;
  res.value = sign * best;
  res.witness = orthonormalize_columns(best_plane);
  double c0 = 0.0;
  res.certified =
      is_constant_curvature(s, 1e-10, &c0) ? Certified::ExactAnalytic : Certified::SampledBound;
  if (res.certified == Certified::ExactAnalytic) res.value = c0;
  return res;
}

}  // namespace

ExtremumResult inf_sectional(const SubmanifoldPoint& s, const SearchBudget& budget) {
  return extremal_sectional(s, budget, 1.0);
}

ExtremumResult sup_sectional(const SubmanifoldPoint& s, const SearchBudget& budget) {
  return extremal_sectional(s, budget, -1.0);
}

namespace {

struct BlockLayout {
  std::vector<int> block_of;  // column -> block id, -1 for complement
  std::vector<std::pair<int, int>> ranges;
};

BlockLayout make_layout(int n, const TupleSpec& t) {
  BlockLayout lay;
  lay.block_of.assign(n, -1);
  int off = 0;
  for (int b = 0; b < t.k(); ++b) {
    lay.ranges.emplace_back(off, t.dims[b]);
    for (int c = 0; c < t.dims[b]; ++c) lay.block_of[off + c] = b;
    off += t.dims[b];
  }
  return lay;
}

double block_tau(const SubmanifoldPoint& s, const Mat& q, int start, int len) {
  double tau = 0.0;
  for (int a = 0; a < len; ++a)
    for (int b = a + 1; b < len; ++b) tau += plane_k(s, q.col(start + a), q.col(start + b));
  return tau;
}

double tuple_value(const SubmanifoldPoint& s, const Mat& q, const BlockLayout& lay) {
  double total = 0.0;
  for (auto [start, len] : lay.ranges) total += block_tau(s, q, start, len);
  return total;
}

// Givens coordinate descent over column pairs that cross block boundaries.
double refine_tuple(const SubmanifoldPoint& s, Mat& q, const BlockLayout& lay, double sign,
                    const SearchBudget& budget) {
  const int n = static_cast<int>(q.cols());
  double val = sign * tuple_value(s, q, lay);
  const int passes = std::min(budget.max_iters, 32);
  for (int pass = 0; pass < passes; ++pass) {
    double before = val;
    for (int p = 0; p < n; ++p)
      for (int c = p + 1; c < n; ++c) {
        int bp = lay.block_of[p], bc = lay.block_of[c];
        if (bp == bc) continue;  // same block or both complement: value unchanged
        auto affected = [&](const Mat& qq) {
          double acc = 0.0;
          if (bp >= 0) acc += block_tau(s, qq, lay.ranges[bp].first, lay.ranges[bp].second);
          if (bc >= 0) acc += block_tau(s, qq, lay.ranges[bc].first, lay.ranges[bc].second);
          return sign * acc;
        };
        double base_aff = affected(q);
        Mat trial = q;
        auto apply = [&](double theta) {
          double ct = std::cos(theta), st = std::sin(theta);
          trial.col(p) = ct * q.col(p) + st * q.col(c);
          trial.col(c) = -st * q.col(p) + ct * q.col(c);
          return affected(trial);
        };
        // coarse scan then golden-section refinement
        const int ns = 17;
        double best_theta = 0.0, best_aff = base_aff;
        for (int t = 0; t < ns; ++t) {
          double theta = -1.5707963267948966 + 3.141592653589793 * t / ns;
          double a = apply(theta);
          if (a < best_aff) {
            best_aff = a;
            best_theta = theta;
          }
        }
        double lo = best_theta - 3.141592653589793 / ns, hi = best_theta + 3.141592653589793 / ns;
        const double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = apply(x1), f2 = apply(x2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = apply(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = apply(x2);
          }
        }
        double theta = (f1 < f2) ? x1 : x2;
        double aff = apply(theta);
        if (std::min(aff, best_aff) < base_aff) {
          if (best_aff < aff) {
            aff = apply(best_theta);
          }
          q = trial;
          val += aff - base_aff;
        }
      }
    if (before - val < budget.step_tol) break;
  }
  return val;
}

// Enumerates frame-aligned tuples: disjoint ascending index subsets per block,
// with ties between equal-size blocks broken by first index to avoid
// duplicate unordered tuples.
void coordinate_tuples(int n, const TupleSpec& t,
                       const std::function<void(const std::vector<std::vector<int>>&)>& fn) {
  std::vector<std::vector<int>> blocks(t.k());
  std::vector<bool> used(n, false);
  std::function<void(int)> rec = [&](int b) {
    if (b == t.k()) {
      fn(blocks);
      return;
    }
    const int len = t.dims[b];
    std::vector<int> idx;
    std::function<void(int)> choose = [&](int from) {
      if (static_cast<int>(idx.size()) == len) {
        if (b > 0 && t.dims[b - 1] == len && blocks[b - 1][0] > idx[0]) return;
        blocks[b] = idx;
        for (int i : idx) used[i] = true;
        rec(b + 1);
        for (int i : idx) used[i] = false;
        return;
      }
      for (int i = from; i < n; ++i) {
        if (used[i]) continue;
        idx.push_back(i);
        choose(i + 1);
        idx.pop_back();
      }
    };
    choose(0);
  };
  rec(0);
}

// Shared search for min (sign=+1) and max (sign=-1) of sum tau(L_j).
ExtremumResult extremal_tuple(const SubmanifoldPoint& s, const TupleSpec& t,
                              const SearchBudget& budget, double sign) {
  const int n = s.n();
  if (!tuple_in_s(t, n)) throw Error(Errc::TupleNotInS, "tuple " + t.str() + " not in S(n)");
  const double tau = scalar_curvature(s);
  ExtremumResult res;
  if (t.k() == 0) {
    res.value = tau;  // delta(empty) = tilde_delta(empty) = tau
    res.certified = Certified::ExactAnalytic;
    return res;
  }
  BlockLayout lay = make_layout(n, t);
  const int span = t.sum();

  double best = std::numeric_limits<double>::infinity();
  Mat best_q;
  std::vector<Mat> starts;

  auto consider = [&](const Mat& q) {
    double val = sign * tuple_value(s, q, lay);
    if (val < best) {
      best = val;
      best_q = q;
    }
  };

  coordinate_tuples(n, t, [&](const std::vector<std::vector<int>>& blocks) {
    Mat q = Mat::Zero(n, n);
    int col = 0;
    std::vector<bool> used(n, false);
    for (const auto& blk : blocks)
      for (int i : blk) {
        q(i, col++) = 1.0;
        used[i] = true;
      }
    for (int i = 0; i < n; ++i)
      if (!used[i]) q(i, col++) = 1.0;
    consider(q);
    starts.push_back(q);
  });

  Rng base(budget.seed);
  for (int r = 0; r < budget.samples; ++r) {
    Rng g = base.derive(kTagTuple + static_cast<std::uint64_t>(r));
    Mat q = random_orthogonal(n, g);
    consider(q);
    if (r < budget.multistarts) starts.push_back(q);
  }

  for (Mat& q : starts) {
    double val = refine_tuple(s, q, lay, sign, budget);
    if (val < best) {
      best = val;
      best_q = q;
    }
  }

  res.value = tau - sign * best;
  res.witness = best_q.leftCols(span);
  double c0 = 0.0;
  res.certified =
      is_constant_curvature(s, 1e-10, &c0) ? Certified::ExactAnalytic : Certified::SampledBound;
  return res;
}

}  // namespace

ExtremumResult delta_invariant(const SubmanifoldPoint& s, const TupleSpec& t,
                               const SearchBudget& budget) {
  return extremal_tuple(s, t, budget, 1.0);
}

ExtremumResult tilde_delta(const SubmanifoldPoint& s, const TupleSpec& t,
                           const SearchBudget& budget) {
  return extremal_tuple(s, t, budget, -1.0);
}

bool s_space_check(const SubmanifoldPoint& s, const TupleSpec& t, const SearchBudget& budget,
                   double tol) {
  double d = delta_invariant(s, t, budget).value;
  double dt = tilde_delta(s, t, budget).value;
  return std::abs(d - dt) <= tol;
}

namespace {

// min over P containing X of Ric_P(X) = sum of the (k-1) smallest eigenvalues
// of the section form restricted to X-perp.
double theta_value(const SubmanifoldPoint& s, const Vec& x, int k, Mat* p_out) {
  Mat b = complement_basis(x);
  Mat m = b.transpose() * section_form(s, x) * b;
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  double acc = 0.0;
  for (int i = 0; i < k - 1; ++i) acc += es.eigenvalues()(i);
  if (p_out) {
    p_out->resize(x.size(), k);
    p_out->col(0) = x;
    for (int i = 0; i < k - 1; ++i) p_out->col(i + 1) = b * es.eigenvectors().col(i);
  }
  return acc;
}

}  // namespace

ExtremumResult theta_k(const SubmanifoldPoint& s, int k, const SearchBudget& budget) {
  const int n = s.n();
  if (k < 2 || k > n) throw Error(Errc::BadK, "theta_k requires 2 <= k <= n");
  double best = std::numeric_limits<double>::infinity();
  Vec best_x;
  std::vector<Vec> starts;
  auto consider = [&](const Vec& x) {
    double val = theta_value(s, x, k, nullptr);
    if (val < best) {
      best = val;
      best_x = x;
    }
  };
  for (int i = 0; i < n; ++i) {
    Vec x = coordinate_vec(n, i);
    consider(x);
    starts.push_back(x);
  }
  Rng base(budget.seed);
  for (int r = 0; r < budget.samples; ++r) {
    Rng g = base.derive(kTagTheta + static_cast<std::uint64_t>(r));
    Vec x = g.unit_vector(n);
    consider(x);
    if (r < budget.multistarts) starts.push_back(x);
  }

  for (Vec x : starts) {
    double val = theta_value(s, x, k, nullptr);
    for (int pass = 0; pass < std::min(budget.max_iters, 32); ++pass) {
      double before = val;
      Mat b = complement_basis(x);
      for (int c = 0; c < b.cols(); ++c) {
        const Vec w = b.col(c);
        auto eval = [&](double theta) {
          Vec xt = std::cos(theta) * x + std::sin(theta) * w;
          xt /= xt.norm();
          return theta_value(s, xt, k, nullptr);
        };
        const int ns = 17;
        double best_theta = 0.0, best_val = val;
        for (int t = 1; t < ns; ++t) {
          double theta = -1.5707963267948966 + 3.141592653589793 * t / ns;
          double v = eval(theta);
          if (v < best_val) {
            best_val = v;
            best_theta = theta;
          }
        }
        double lo = best_theta - 3.141592653589793 / ns, hi = best_theta + 3.141592653589793 / ns;
        const double gr = 0.6180339887498949;
        double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
        double f1 = eval(x1), f2 = eval(x2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = eval(x1);
          } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = eval(x2);
          }
        }
        double theta = (f1 < f2) ? x1 : x2;
        double v = eval(theta);
        if (std::min(v, best_val) < val) {
          if (best_val < v) {
            theta = best_theta;
            v = best_val;
          }
          x = std::cos(theta) * x + std::sin(theta) * w;
          x /= x.norm();
          val = v;
        }
      }
      if (before - val < budget.step_tol) break;
    }
    if (val < best) {
      best = val;
      best_x = x;
    }
  }

  ExtremumResult res;
  res.value = best / (k - 1);
  res.witness_vector = best_x;
  theta_value(s, best_x, k, &res.witness);
  double c0 = 0.0;
  res.certified =
      is_constant_curvature(s, 1e-10, &c0) ? Certified::ExactAnalytic : Certified::SampledBound;
  if (res.certified == Certified::ExactAnalytic) res.value = c0;
  return res;
}

}  // namespace chen
