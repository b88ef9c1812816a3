#include "chenbounds/forge.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>

namespace chen {

namespace {

constexpr std::uint64_t kTagHEigs = 0x6865696773ULL;
constexpr std::uint64_t kTagAngles = 0x616e676cULL;
constexpr std::uint64_t kTagSigma = 0x7369676d61ULL;

Mat canonical_phi(int m) {
  const int d = 2 * m + 1;
  Mat phi = Mat::Zero(d, d);
  for (int i = 0; i < m; ++i) {
    phi(m + i, i) = 1.0;   // phi X_i = phi X_i slot
    phi(i, m + i) = -1.0;  // phi (phi X_i) = -X_i
  }
  return phi;
}

Mat adapted_h(int m, const std::vector<double>& eigs) {
  const int d = 2 * m + 1;
  Mat h = Mat::Zero(d, d);
  for (int i = 0; i < m; ++i) {
    h(i, i) = eigs[i];
    h(m + i, m + i) = -eigs[i];
  }
  return h;
}

// Tangent/normal frames from the adapted pairs, with a per-pair rotation
// angle (zero angles give the plain Legendrian frame).
struct AdaptedFrames {
  Mat tangent;
  Mat normal;
};

AdaptedFrames adapted_frames(const AmbientPoint& a, int n, const std::vector<double>& angles) {
  const int m = a.m;
  const int d = a.dim();
  AdaptedFrames fr;
  fr.tangent = Mat::Zero(d, n);
  fr.normal = Mat::Zero(d, d - n);
  for (int i = 0; i < n; ++i) {
    double c = std::cos(angles[i]), s = std::sin(angles[i]);
    fr.tangent(i, i) = c;
    fr.tangent(m + i, i) = s;
    // phi e_i, the in-pair orthogonal partner
    fr.normal(i, i) = -s;
    fr.normal(m + i, i) = c;
  }
  int col = n;
  for (int j = n; j < m; ++j) {
    fr.normal(j, col++) = 1.0;
  }
  for (int j = n; j < m; ++j) {
    fr.normal(m + j, col++) = 1.0;
  }
  fr.normal(d - 1, col) = 1.0;  // xi last
  return fr;
}

void require_sasakian_point(const AmbientPoint& a, const char* who) {
  if (!classify_sasakian(a.f) || a.h.mat().cwiseAbs().maxCoeff() > 1e-12)
    throw Error(Errc::BadSpec, std::string(who) + " requires a Sasakian-mode ambient point");
}

}  // namespace

FCoefficients resolve_f(const GeneratorSpec& spec) {
  FCoefficients f;
  if (std::holds_alternative<FCoefficients>(spec.f_source))
    f = std::get<FCoefficients>(spec.f_source);
  else if (std::holds_alternative<KappaMuSource>(spec.f_source)) {
    auto& km = std::get<KappaMuSource>(spec.f_source);
    f = kappa_mu_coefficients(km.c, km.kappa, km.mu);
  } else {
    auto& ns = std::get<NonSasakianSource>(spec.f_source);
    f = non_sasakian_divided_coefficients(ns.kappa, ns.mu);
  }
  if (spec.mode == GeneratorMode::Sasakian) {
    f.f3 = f.f1 - 1.0;
    if (spec.enforce_sasakian_f2 && std::abs(f.f2 - (f.f1 - 1.0)) > 1e-12)
      throw Error(Errc::BadSpec, "Sasakian point requires f2 = f1 - 1");
  }
  return f;
}

AmbientPoint make_ambient(const GeneratorSpec& spec) {
  if (spec.m < 1 || spec.n < 2 || spec.n > spec.m)
    throw Error(Errc::BadSpec, "need 2 <= n <= m (C-totally real dimension bound)");
  if (2 * spec.m + 1 > kMaxDim) throw Error(Errc::BadSpec, "ambient dimension above cap");

  std::vector<double> eigs(spec.m, 0.0);
  if (spec.mode == GeneratorMode::General) {
    if (!spec.h_eigenvalues.empty()) {
      if (static_cast<int>(spec.h_eigenvalues.size()) != spec.m)
        throw Error(Errc::BadSpec, "h_eigenvalues must have one entry per pair");
      eigs = spec.h_eigenvalues;
    } else {
      Rng g = Rng(spec.seed).derive(kTagHEigs);
      for (double& e : eigs) e = g.uniform(-1.0, 1.0);
    }
  }

  AmbientPoint a;
  a.m = spec.m;
  a.phi = SkewOp(canonical_phi(spec.m));
  a.h = SymOp(adapted_h(spec.m, eigs));
  a.f = resolve_f(spec);
  return a;
}

SubmanifoldPoint make_random_submanifold(const AmbientPoint& a, int n, double sigma_scale,
                                         std::uint64_t seed, bool general_frame) {
  if (n > a.m) throw Error(Errc::DimensionTooLarge, "n must not exceed m");
  std::vector<double> angles(n, 0.0);
  Rng base(seed);
  if (general_frame) {
    Rng g = base.derive(kTagAngles);
    for (double& t : angles) t = g.uniform(-1.5707963267948966, 1.5707963267948966);
  }
  AdaptedFrames fr = adapted_frames(a, n, angles);

  const int p = a.dim() - n;
  Rng g = base.derive(kTagSigma);
  std::vector<Mat> sigma_free;
  sigma_free.reserve(p - 1);
  for (int r = 0; r < p - 1; ++r) {
    Mat slice = Mat::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        double v = g.uniform(-sigma_scale, sigma_scale);
        slice(i, j) = v;
        slice(j, i) = v;
      }
    sigma_free.push_back(slice);
  }
  return build_submanifold(a, fr.tangent, fr.normal, sigma_free);
}

SubmanifoldPoint make_totally_umbilical(const AmbientPoint& a, int n, double lambda,
                                        int normal_index) {
  if (n > a.m) throw Error(Errc::DimensionTooLarge, "n must not exceed m");
  const int p = a.dim() - n;
  if (normal_index < 0 || normal_index >= p - 1)
    throw Error(Errc::BadSpec, "normal_index must name a non-xi normal");
  AdaptedFrames fr = adapted_frames(a, n, std::vector<double>(n, 0.0));
  // umbilicity forces sigma^xi = <H,xi> I = 0, so (phi h)^T must vanish
  Mat phiht = fr.tangent.transpose() * a.phi.mat() * a.h.mat() * fr.tangent;
  if (phiht.cwiseAbs().maxCoeff() > 1e-12)
    throw Error(Errc::IncompatibleXiConstraint, "(phi h)^T != 0 contradicts umbilicity");
  std::vector<Mat> sigma_free(p - 1, Mat::Zero(n, n));
  sigma_free[normal_index] = lambda * Mat::Identity(n, n);
  return build_submanifold(a, fr.tangent, fr.normal, sigma_free);
}

SubmanifoldPoint make_equality_basic(const AmbientPoint& a, int n, double pa, double pb,
                                     const std::vector<double>& c_list,
                                     const std::vector<double>& d_list) {
  require_sasakian_point(a, "make_equality_basic");
  if (n > a.m) throw Error(Errc::DimensionTooLarge, "n must not exceed m");
  const int p = a.dim() - n;
  if (static_cast<int>(c_list.size()) != p - 2 || static_cast<int>(d_list.size()) != p - 2)
    throw Error(Errc::BadSpec, "c_list/d_list must cover the normals beyond e_{n+1}");
  AdaptedFrames fr = adapted_frames(a, n, std::vector<double>(n, 0.0));
  std::vector<Mat> sigma_free(p - 1, Mat::Zero(n, n));
  Mat& a1 = sigma_free[0];
  a1(0, 0) = pa;
  a1(1, 1) = pb;
  for (int i = 2; i < n; ++i) a1(i, i) = pa + pb;
  for (int r = 0; r < p - 2; ++r) {
    Mat& ar = sigma_free[r + 1];
    ar(0, 0) = c_list[r];
    ar(1, 1) = -c_list[r];
    ar(0, 1) = ar(1, 0) = d_list[r];
  }
  return build_submanifold(a, fr.tangent, fr.normal, sigma_free);
}

SubmanifoldPoint make_equality_delta(const AmbientPoint& a, int n, const TupleSpec& t,
                                     const std::vector<BlockSpec>& block_specs) {
  require_sasakian_point(a, "make_equality_delta");
  if (n > a.m) throw Error(Errc::DimensionTooLarge, "n must not exceed m");
  if (!tuple_in_s(t, n)) throw Error(Errc::TupleNotInS, "tuple outside S(n)");
  if (t.k() < 1) throw Error(Errc::BadSpec, "delta equality case needs a non-empty tuple");
  const int p = a.dim() - n;
  if (static_cast<int>(block_specs.size()) != p - 1)
    throw Error(Errc::BadSpec, "need one BlockSpec per non-xi normal");

  AdaptedFrames fr = adapted_frames(a, n, std::vector<double>(n, 0.0));
  std::vector<Mat> sigma_free(p - 1, Mat::Zero(n, n));
  for (int r = 0; r < p - 1; ++r) {
    const auto& blocks = block_specs[r].blocks;
    if (static_cast<int>(blocks.size()) != t.k())
      throw Error(Errc::BadSpec, "BlockSpec must carry one block per tuple entry");
    double common_trace = blocks[0].trace();
    int off = 0;
    for (int j = 0; j < t.k(); ++j) {
      const Mat& b = blocks[j];
      if (b.rows() != t.dims[j] || b.cols() != t.dims[j])
        throw Error(Errc::DimensionMismatch, "block size must match the tuple entry");
      if ((b - b.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw Error(Errc::AsymmetricSigma, "blocks must be symmetric");
      if (std::abs(b.trace() - common_trace) > 1e-12)
        throw Error(Errc::TraceMismatch, "all block traces must agree");
      sigma_free[r].block(off, off, t.dims[j], t.dims[j]) = b;
      off += t.dims[j];
    }
    for (int i = off; i < n; ++i) sigma_free[r](i, i) = common_trace;
  }
  return build_submanifold(a, fr.tangent, fr.normal, sigma_free);
}

namespace {

// Sectional curvature of span(u, v) for orthonormal tangent-frame vectors,
// recomputed from the seven structure-tensor terms and the Gauss equation.
// Deliberately shares nothing with the cached curvature tensor.
double oracle_plane_k(const SubmanifoldPoint& s, const Vec& u, const Vec& v) {
  const AmbientPoint& a = s.ambient();
  const Mat& phi = a.phi.mat();
  const Mat& h = a.h.mat();
  Vec bu = s.tangent_frame() * u;
  Vec bv = s.tangent_frame() * v;

  double guu = bu.dot(bu), gvv = bv.dot(bv), guv = bu.dot(bv);
  double eu = AmbientPoint::eta(bu), ev = AmbientPoint::eta(bv);
  Vec pu = phi * bu, pv = phi * bv;
  Vec hu = h * bu, hv = h * bv;
  Vec phu = phi * hu, phv = phi * hv;

  double t1 = gvv * guu - guv * guv;
  double t2 = bu.dot(pv) * pv.dot(bu) - bv.dot(pv) * pu.dot(bu) + 2.0 * bu.dot(pv) * pv.dot(bu);
  double t3 = eu * ev * guv - ev * ev * guu + guv * ev * eu - gvv * eu * eu;
  double t4 = gvv * hu.dot(bu) - guv * hv.dot(bu) + hv.dot(bv) * guu - hu.dot(bv) * guv;
  double t51 = hv.dot(bv) * hu.dot(bu) - hu.dot(bv) * hv.dot(bu);
  double t52 = phv.dot(bv) * phu.dot(bu) - phu.dot(bv) * phv.dot(bu);
  double t6 = eu * ev * hv.dot(bu) - ev * ev * hu.dot(bu) + hu.dot(bv) * ev * eu -
              hv.dot(bv) * eu * eu;
  double ambient_k = a.f.f1 * t1 + a.f.f2 * t2 + a.f.f3 * t3 + a.f.f4 * t4 + a.f.f51 * t51 +
                     a.f.f52 * t52 + a.f.f6 * t6;

  double gauss = 0;
  for (const SymOp& sl : s.sigma()) {
    double suu = u.dot(sl.mat() * u);
    double svv = v.dot(sl.mat() * v);
    double suv = u.dot(sl.mat() * v);
    gauss += suu * svv - suv * suv;
  }
  return ambient_k + gauss;
}

double oracle_block_tau(const SubmanifoldPoint& s, const Mat& basis) {
  double tau = 0;
  for (int i = 0; i < basis.cols(); ++i)
    for (int j = i + 1; j < basis.cols(); ++j) tau += oracle_plane_k(s, basis.col(i), basis.col(j));
  return tau;
}

// Ascending-index combinations per block; equal-sized blocks are ordered by
// their smallest member so each unordered tuple appears once.
void coordinate_partitions(int n, const std::vector<int>& dims, std::size_t idx,
                           std::vector<int>& free_idx, std::vector<std::vector<int>>& current,
                           std::vector<std::vector<std::vector<int>>>& out) {
  if (idx == dims.size()) {
    out.push_back(current);
    return;
  }
  int want = dims[idx];
  std::vector<int> pick(want);
  std::vector<int> comb(want);
  std::function<void(int, int)> rec = [&](int start, int got) {
    if (got == want) {
      if (idx > 0 && dims[idx] == dims[idx - 1] && comb[0] < current[idx - 1][0]) return;
      std::vector<int> rest;
      for (int x : free_idx)
        if (std::find(comb.begin(), comb.end(), x) == comb.end()) rest.push_back(x);
      current.push_back(comb);
      std::vector<int> saved = free_idx;
      free_idx = rest;
      coordinate_partitions(n, dims, idx + 1, free_idx, current, out);
      free_idx = saved;
      current.pop_back();
      return;
    }
    for (int i = start; i < static_cast<int>(free_idx.size()); ++i) {
      comb[got] = free_idx[i];
      rec(i + 1, got + 1);
    }
  };
  rec(0, 0);
}

Mat random_frame_pair(Rng& g, int n) {
  Mat pair(n, 2);
  Vec u = g.unit_vector(n);
  Vec v;
  double nv = 0;
  do {
    Vec w = g.gaussian_vector(n);
    v = w - u.dot(w) * u;
    nv = v.norm();
  } while (nv < 1e-8);
  pair.col(0) = u;
  pair.col(1) = v / nv;
  return pair;
}

}  // namespace

OracleInvariants oracle_invariants(const SubmanifoldPoint& s, int density, std::uint64_t seed) {
  const int n = s.n();
  if (n > 5) throw Error(Errc::TooLarge, "oracle only supports n <= 5");
  if (density < 1) throw Error(Errc::BadSpec, "density must be positive");

  OracleInvariants out;

  std::vector<Vec> coord(n);
  for (int i = 0; i < n; ++i) {
    coord[i] = Vec::Zero(n);
    coord[i](i) = 1.0;
  }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) out.tau += oracle_plane_k(s, coord[i], coord[j]);

  Rng base(seed);
  {
    Rng g = base.derive(1);
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) best = std::min(best, oracle_plane_k(s, coord[i], coord[j]));
    for (int r = 0; r < density; ++r) {
      Mat pr = random_frame_pair(g, n);
      best = std::min(best, oracle_plane_k(s, pr.col(0), pr.col(1)));
    }
    out.inf_k = best;
  }

  const int tuple_sweeps = std::max(200, density / 1000);
  for (const TupleSpec& t : enumerate_tuples(n)) {
    if (t.k() == 0) {
      out.delta.emplace_back(t, out.tau);
      out.tilde_delta.emplace_back(t, out.tau);
      continue;
    }
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    auto eval = [&](const std::vector<Mat>& bases) {
      double sum = 0;
      for (const Mat& b : bases) sum += oracle_block_tau(s, b);
      lo = std::min(lo, sum);
      hi = std::max(hi, sum);
    };

    std::vector<int> free_idx(n);
    for (int i = 0; i < n; ++i) free_idx[i] = i;
    std::vector<std::vector<int>> current;
    std::vector<std::vector<std::vector<int>>> parts;
    coordinate_partitions(n, t.dims, 0, free_idx, current, parts);
    for (const auto& part : parts) {
      std::vector<Mat> bases;
      for (const auto& idxs : part) {
        Mat b = Mat::Zero(n, static_cast<int>(idxs.size()));
        for (std::size_t c = 0; c < idxs.size(); ++c) b(idxs[c], static_cast<int>(c)) = 1.0;
        bases.push_back(b);
      }
      eval(bases);
    }

    std::uint64_t th = 1469598103934665603ULL;  // FNV-1a, stable across platforms
    for (char ch : t.str()) th = (th ^ static_cast<unsigned char>(ch)) * 1099511628211ULL;
    Rng g = base.derive(2).derive(th);
    for (int r = 0; r < tuple_sweeps; ++r) {
      Mat q = random_orthogonal(n, g);
      std::vector<Mat> bases;
      int off = 0;
      for (int dj : t.dims) {
        bases.push_back(q.middleCols(off, dj));
        off += dj;
      }
      eval(bases);
    }
    out.delta.emplace_back(t, out.tau - lo);
    out.tilde_delta.emplace_back(t, out.tau - hi);
  }

  const int theta_sweeps = std::max(200, density / 1000);
  for (int k = 2; k <= n; ++k) {
    double best = std::numeric_limits<double>::infinity();
    auto eval_frame = [&](const Mat& b) {
      for (int c = 0; c < k; ++c) {
        double ric = 0;
        for (int j = 0; j < k; ++j)
          if (j != c) ric += oracle_plane_k(s, b.col(c), b.col(j));
        best = std::min(best, ric);
      }
    };
    std::vector<int> sel(n, 0);
    std::fill(sel.begin(), sel.begin() + k, 1);
    std::sort(sel.begin(), sel.end());
    do {
      Mat b(n, k);
      int c = 0;
      for (int i = 0; i < n; ++i)
        if (sel[i]) b.col(c++) = coord[i];
      eval_frame(b);
    } while (std::next_permutation(sel.begin(), sel.end()));
    Rng g = base.derive(3).derive(static_cast<std::uint64_t>(k));
    for (int r = 0; r < theta_sweeps; ++r) {
      Mat q = random_orthogonal(n, g);
      eval_frame(q.leftCols(k));
    }
    out.theta.emplace_back(k, best / (k - 1));
  }
  return out;
}

}  // namespace chen
