#include "doctest.h"
#include "helpers.hpp"

using namespace chen;
using namespace chen::testing;

TEST_CASE("canonical Legendrian frame with zero sigma is totally geodesic") {
  SubmanifoldPoint s = totally_geodesic(3, 3);
  CHECK(sigma_norm_sq(s) == 0.0);
  CHECK(mean_curvature(s).norm_sq == 0.0);
  for (const SymOp& a : s.sigma()) CHECK(a.mat().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("frames breaking the anti-invariance or xi conventions are rejected") {
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});

  // tangent plane spanned by X_1 and phi X_1 is phi-invariant
  Mat tf = Mat::Zero(7, 2), nf = Mat::Zero(7, 5);
  tf(0, 0) = 1;
  tf(3, 1) = 1;
  nf(1, 0) = nf(2, 1) = nf(4, 2) = nf(5, 3) = nf(6, 4) = 1;  // xi last
  try {
    build_submanifold(a, tf, nf, std::vector<Mat>(4, Mat::Zero(2, 2)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotCTotallyReal);
  }

  // xi as a tangent vector cannot coexist with the xi-last normal convention
  Mat tf2 = Mat::Zero(7, 2), nf2 = Mat::Zero(7, 5);
  tf2(0, 0) = 1;
  tf2(6, 1) = 1;
  nf2(1, 0) = nf2(2, 1) = nf2(3, 2) = nf2(4, 3) = nf2(5, 4) = 1;
  try {
    build_submanifold(a, tf2, nf2, std::vector<Mat>(4, Mat::Zero(2, 2)));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BadFrame);
  }
}

TEST_CASE("adapted frame keeps the xi shape operator zero even with h") {
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 1, 0.5, -0.5, 1}, {0.8, -0.3, 0.1});
  SubmanifoldPoint s = adapted_instance(a, 3, {});
  CHECK(s.sigma().back().mat().cwiseAbs().maxCoeff() < 1e-14);
  // and the tangential parts come out diagonal / zero
  SymOp ht = tangential_h(s);
  CHECK(ht(0, 0) == doctest::Approx(0.8));
  CHECK(ht(1, 1) == doctest::Approx(-0.3));
  CHECK(ht(2, 2) == doctest::Approx(0.1));
  CHECK(tangential_phih(s).mat().cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("rotated pair frames produce a nonzero tangential phi-h part") {
  GeneratorSpec spec;
  spec.m = 3;
  spec.n = 3;
  spec.f_source = FCoefficients{1, 0.5, 0.2, 1, 0.5, -0.5, 1};
  spec.h_eigenvalues = {0.9, -0.4, 0.2};
  AmbientPoint a = make_ambient(spec);
  SubmanifoldPoint s = make_random_submanifold(a, 3, 0.5, 77, true);
  CHECK(tangential_phih(s).frobenius_sq() > 1e-6);
  // the xi slice must equal the tangential part of phi h
  CHECK((s.sigma().back().mat() - tangential_phih(s).mat()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("asymmetric free sigma slices are rejected") {
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  std::vector<Mat> sf(3, Mat::Zero(3, 3));
  sf[1](0, 1) = 0.5;  // not mirrored
  try {
    adapted_instance(a, 3, sf);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::AsymmetricSigma);
  }
}

TEST_CASE("mean curvature of the diag(1,2,3,3) instance") {
  SubmanifoldPoint s = diag1233();
  CHECK(mean_curvature(s).norm_sq == doctest::Approx(81.0 / 16.0).epsilon(1e-12));
  CHECK(sigma_norm_sq(s) == doctest::Approx(23.0).epsilon(1e-12));
}

TEST_CASE("umbilical instances square the mean curvature") {
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  for (double lam : {0.5, 1.0, 2.0}) {
    SubmanifoldPoint s = make_totally_umbilical(a, 3, lam);
    CHECK(mean_curvature(s).norm_sq == doctest::Approx(lam * lam).epsilon(1e-12));
    CHECK(sigma_norm_sq(s) == doctest::Approx(3 * lam * lam).epsilon(1e-12));
  }
}

TEST_CASE("induced curvature via the Gauss equation") {
  SubmanifoldPoint s = diag1233();
  CHECK(s.frame_sectional(0, 1) == doctest::Approx(3.0).epsilon(1e-12));

  // totally geodesic: induced curvature equals the ambient curvature
  SubmanifoldPoint tg = totally_geodesic(3, 3, 1.5);
  Rng g(4);
  for (int rep = 0; rep < 30; ++rep) {
    Vec u = tg.tangent_frame() * g.gaussian_vector(3);
    Vec v = tg.tangent_frame() * g.gaussian_vector(3);
    Vec z = tg.tangent_frame() * g.gaussian_vector(3);
    Vec w = tg.tangent_frame() * g.gaussian_vector(3);
    double lhs = induced_curvature(tg, u, v, z, w);
    double rhs = ambient_curvature(tg.ambient(), u, v, z, w);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(std::abs(induced_curvature(tg, u, u, z, w)) < 1e-10 * (1 + u.squaredNorm()));
  }
}

TEST_CASE("induced curvature rejects non-tangent input") {
  SubmanifoldPoint s = totally_geodesic(2, 3);
  Vec bad = s.ambient().xi();
  try {
    induced_curvature(s, bad, bad, bad, bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotTangent);
  }
}

TEST_CASE("Gauss equation reproduced slice by slice on random instances") {
  GeneratorSpec spec;
  spec.m = 4;
  spec.n = 4;
  spec.f_source = FCoefficients{0.7, -0.2, 0.4, 1.1, 0.3, -0.6, 0.9};
  AmbientPoint a = make_ambient(spec);
  SubmanifoldPoint s = make_random_submanifold(a, 4, 1.0, 5);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      if (i == j) continue;
      Vec ei = s.tangent_frame().col(i), ej = s.tangent_frame().col(j);
      double ambient_k = ambient_curvature(a, ei, ej, ej, ei);
      double sigma_terms = 0;
      for (const SymOp& sl : s.sigma())
        sigma_terms += sl(i, i) * sl(j, j) - sl(i, j) * sl(i, j);
      CHECK(s.frame_sectional(i, j) ==
            doctest::Approx(ambient_k + sigma_terms).epsilon(1e-10));
    }
}

TEST_CASE("relative null space: full, trivial, and partial kernels") {
  SubmanifoldPoint tg = totally_geodesic(3, 3);
  CHECK(relative_null_space(tg).cols() == 3);

  GeneratorSpec spec;
  spec.m = 3;
  spec.n = 3;
  spec.f_source = FCoefficients{1, 0, 0, 0, 0, 0, 0};
  SubmanifoldPoint rnd = make_random_submanifold(make_ambient(spec), 3, 1.0, 9);
  CHECK(relative_null_space(rnd).cols() == 0);

  // minimal instance annihilating e_1: H = 0, first row/column of every A_r zero
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  std::vector<Mat> sf(3, Mat::Zero(3, 3));
  sf[0](1, 1) = 1.0;
  sf[0](2, 2) = -1.0;
  SubmanifoldPoint s = adapted_instance(a, 3, sf);
  Mat ker = relative_null_space(s);
  REQUIRE(ker.cols() == 1);
  CHECK(std::abs(std::abs(ker(0, 0)) - 1.0) < 1e-10);
}

TEST_CASE("frame rotation leaves the scalar invariants unchanged") {
  GeneratorSpec spec;
  spec.m = 4;
  spec.n = 3;
  spec.f_source = FCoefficients{0.9, 0.1, -0.3, 1.2, 0.5, -0.5, 0.7};
  AmbientPoint a = make_ambient(spec);
  SubmanifoldPoint s = make_random_submanifold(a, 3, 0.8, 21);

  Mat q = random_orthogonal(3, 99);
  Mat tf = s.tangent_frame() * q;
  std::vector<Mat> sf;
  for (int r = 0; r + 1 < s.num_normals(); ++r)
    sf.push_back(q.transpose() * s.sigma()[r].mat() * q);
  SubmanifoldPoint rot = build_submanifold(a, tf, s.normal_frame(), sf);

  CHECK(scalar_curvature(rot) == doctest::Approx(scalar_curvature(s)).epsilon(1e-10));
  CHECK(sigma_norm_sq(rot) == doctest::Approx(sigma_norm_sq(s)).epsilon(1e-10));
  CHECK(mean_curvature(rot).norm_sq ==
        doctest::Approx(mean_curvature(s).norm_sq).epsilon(1e-10));
  CHECK(tangential_h(rot).trace() == doctest::Approx(tangential_h(s).trace()).epsilon(1e-10));
  CHECK(tangential_h(rot).frobenius_sq() ==
        doctest::Approx(tangential_h(s).frobenius_sq()).epsilon(1e-10));
}

TEST_CASE("sigma scaling squares into the mean curvature when the xi slice is zero") {
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  std::vector<Mat> sf(3, Mat::Zero(3, 3));
  sf[0] << 1, 0.5, 0, 0.5, -2, 1, 0, 1, 0.25;
  SubmanifoldPoint s1 = adapted_instance(a, 3, sf);
  for (Mat& m : sf) m *= 3.0;
  SubmanifoldPoint s3 = adapted_instance(a, 3, sf);
  CHECK(mean_curvature(s3).norm_sq ==
        doctest::Approx(9.0 * mean_curvature(s1).norm_sq).epsilon(1e-12));
}

TEST_CASE("mean curvature gauge aligns the first normal with H") {
  GeneratorSpec spec;
  spec.m = 3;
  spec.n = 3;
  spec.f_source = FCoefficients{1, 0, 0, 0, 0, 0, 0};
  SubmanifoldPoint s = make_random_submanifold(make_ambient(spec), 3, 1.0, 31);
  SubmanifoldPoint g = with_mean_curvature_gauge(s);
  MeanCurvature h = mean_curvature(g);
  CHECK(h.norm_sq == doctest::Approx(mean_curvature(s).norm_sq).epsilon(1e-10));
  for (int r = 1; r + 1 < g.num_normals(); ++r) CHECK(std::abs(h.h(r)) < 1e-10);
}
