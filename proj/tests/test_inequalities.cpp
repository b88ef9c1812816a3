#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "helpers.hpp"

using namespace chen;
using namespace chen::testing;

namespace {

Subspace coord_plane(int n, int i, int j) {
  Mat b = Mat::Zero(n, 2);
  b(i, 0) = 1;
  b(j, 1) = 1;
  return Subspace(b);
}

Vec coord_vec(int n, int i) {
  Vec v = Vec::Zero(n);
  v(i) = 1;
  return v;
}

SubmanifoldPoint general_random(std::uint64_t seed, int n = 4, int m = 4) {
  GeneratorSpec spec;
  spec.m = m;
  spec.n = n;
  spec.f_source = FCoefficients{0.6, -0.4, 0.9, 1.1, 0.35, -0.8, 1.3};
  spec.seed = seed;
  return make_random_submanifold(make_ambient(spec), n, 1.0, seed);
}

}  // namespace

TEST_CASE("scalar identity hand values") {
  InequalityReport tg = check_scalar_identity(totally_geodesic(3, 3));
  CHECK(tg.lhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(tg.rhs == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(tg.equality);

  InequalityReport d = check_scalar_identity(diag1233());
  CHECK(d.lhs == doctest::Approx(70.0).epsilon(1e-12));
  CHECK(d.rhs == doctest::Approx(70.0).epsilon(1e-12));
  CHECK(d.equality);
}

TEST_CASE("scalar identity on random instances with nonzero h") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    SubmanifoldPoint s = general_random(seed);
    InequalityReport r = check_scalar_identity(s);
    CHECK(std::abs(r.rhs - r.lhs) <= 1e-9 * (1 + std::abs(r.lhs)));
  }
}

TEST_CASE("fundamental plane bound: hand values") {
  // umbilical n=3, lambda=1, f1=1: lhs = 4, rhs = 4.25
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  SubmanifoldPoint um = make_totally_umbilical(a, 3, 1.0);
  InequalityReport r = check_chen_fundamental(um, coord_plane(3, 0, 1));
  CHECK(r.lhs == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(4.25).epsilon(1e-12));
  CHECK(r.slack == doctest::Approx(0.25).epsilon(1e-10));

  // equality instance a=1, b=2, n=4: lhs = rhs = 32 at span(e1,e2)
  AmbientPoint a4 = simple_ambient(4, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  SubmanifoldPoint eq = make_equality_basic(a4, 4, 1.0, 2.0, {0, 0, 0}, {0, 0, 0});
  InequalityReport re = check_chen_fundamental(eq, coord_plane(4, 0, 1));
  CHECK(re.lhs == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(re.rhs == doctest::Approx(32.0).epsilon(1e-12));
  CHECK(re.equality);

  // totally geodesic n=3: lhs = rhs = 2 at any plane
  SubmanifoldPoint tg = totally_geodesic(3, 3);
  InequalityReport rt = check_chen_fundamental(tg, coord_plane(3, 1, 2));
  CHECK(rt.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(rt.equality);
}

TEST_CASE("fundamental plane bound holds on random instances") {
  Rng g(51);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SubmanifoldPoint s = general_random(seed);
    for (int rep = 0; rep < 50; ++rep) {
      Mat b(4, 2);
      b.col(0) = g.gaussian_vector(4);
      b.col(1) = g.gaussian_vector(4);
      InequalityReport r = check_chen_fundamental(s, Subspace(orthonormalize_columns(b)));
      CHECK(r.slack >= -1e-8);
    }
  }
}

TEST_CASE("Ricci bound: hand values and null-space equality") {
  SubmanifoldPoint tg = totally_geodesic(3, 3);
  InequalityReport r = check_ricci_bound(tg, coord_vec(3, 0));
  CHECK(r.lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(r.equality);

  InequalityReport rd = check_ricci_bound(diag1233(), coord_vec(4, 0));
  CHECK(rd.lhs == doctest::Approx(11.0).epsilon(1e-12));
  CHECK(rd.rhs == doctest::Approx(93.0 / 4.0).epsilon(1e-12));

  // minimal instance with e_1 in the relative null space: equality
  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  std::vector<Mat> sf(3, Mat::Zero(3, 3));
  sf[0](1, 1) = 1.0;
  sf[0](2, 2) = -1.0;
  SubmanifoldPoint s = adapted_instance(a, 3, sf);
  Mat ker = relative_null_space(s);
  REQUIRE(ker.cols() == 1);
  InequalityReport rn = check_ricci_bound(s, ker.col(0));
  CHECK(std::abs(rn.lhs - 2.0 * 1.0) <= 1e-9);  // Ric(U) = (n-1) f1
  CHECK(rn.equality);
}

TEST_CASE("Ricci bound rejects non-unit input") {
  CHECK_THROWS_AS(check_ricci_bound(diag1233(), 2.0 * coord_vec(4, 0)), Error);
}

TEST_CASE("mean curvature vs scalar curvature bound") {
  InequalityReport tg = check_mean_vs_scalar(totally_geodesic(3, 3));
  CHECK(tg.lhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tg.rhs == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(tg.equality);

  InequalityReport d = check_mean_vs_scalar(diag1233());
  CHECK(d.lhs == doctest::Approx(58.0).epsilon(1e-12));
  CHECK(d.rhs == doctest::Approx(60.75).epsilon(1e-12));

  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  for (double lam : {0.5, 1.0, 2.0}) {
    InequalityReport um = check_mean_vs_scalar(make_totally_umbilical(a, 3, lam));
    CHECK(um.rhs == doctest::Approx(6 * lam * lam).epsilon(1e-10));
    CHECK(std::abs(um.slack) <= 1e-9);
  }
}

TEST_CASE("theta bound: exact on constant curvature, conservative otherwise") {
  SearchBudget budget;
  SubmanifoldPoint tg = totally_geodesic(3, 3);
  for (int k = 2; k <= 3; ++k) {
    InequalityReport r = check_theta_bound(tg, k, budget);
    CHECK(r.mode == CheckMode::Exact);
    CHECK(std::abs(r.slack) <= 1e-9);
    CHECK(r.equality);
  }

  AmbientPoint a = simple_ambient(3, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  InequalityReport um = check_theta_bound(make_totally_umbilical(a, 3, 1.0), 2, budget);
  CHECK(um.mode == CheckMode::Exact);
  CHECK(std::abs(um.slack) <= 1e-9);

  SubmanifoldPoint rnd = general_random(7);
  InequalityReport rc = check_theta_bound(rnd, 2, budget);
  CHECK(rc.mode == CheckMode::Conservative);
  CHECK(!rc.equality);
  CHECK(rc.passed());  // conservative reports never fail
  REQUIRE(rc.exact_chain_lhs.has_value());
  // the scalar-curvature-form bound the conservative check descends from
  CHECK(*rc.exact_chain_lhs <= rc.rhs + 1e-8);
}

TEST_CASE("Sasakian suite: equalities and mode guard") {
  SubmanifoldPoint tg = totally_geodesic(3, 3);
  Vec u = coord_vec(3, 0);
  auto reports = check_sasakian_suite(tg, coord_plane(3, 0, 1), u);
  REQUIRE(reports.size() == 3);
  CHECK(reports[0].lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(reports[0].equality);
  CHECK(reports[1].lhs == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(reports[1].equality);
  CHECK(reports[2].slack >= 0.0);

  // diag(1,2,3,3) in Sasakian mode: PSD margin is min eig of 93 I - 4 S = 9
  SubmanifoldPoint d = diag1233();
  auto rd = check_sasakian_suite(d, coord_plane(4, 0, 1), coord_vec(4, 0));
  CHECK(rd[2].rhs == doctest::Approx(9.0).epsilon(1e-10));
  CHECK(rd[2].slack >= -1e-8);

  SubmanifoldPoint withh = general_random(3);
  CHECK_THROWS_AS(check_sasakian_suite(withh, coord_plane(4, 0, 1), coord_vec(4, 0)), Error);
}

TEST_CASE("delta tuple bound: hand values and input guards") {
  SubmanifoldPoint tg = totally_geodesic(4, 4);
  TupleSpec t{{2}};
  InequalityReport r = check_delta_tuple(tg, t, {coord_plane(4, 0, 1)});
  CHECK(r.lhs == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.rhs == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(r.equality);

  AmbientPoint a = simple_ambient(4, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  SubmanifoldPoint um = make_totally_umbilical(a, 4, 1.0);
  InequalityReport ru = check_delta_tuple(um, t, {coord_plane(4, 0, 1)});
  CHECK(ru.lhs == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(ru.rhs == doctest::Approx(31.0 / 3.0).epsilon(1e-12));
  CHECK(ru.slack == doctest::Approx(1.0 / 3.0).epsilon(1e-10));

  CHECK_THROWS_AS(check_delta_tuple(tg, TupleSpec{{4}}, {Subspace(Mat::Identity(4, 4))}), Error);
  CHECK_THROWS_AS(check_delta_tuple(tg, t, {coord_plane(4, 0, 1), coord_plane(4, 2, 3)}), Error);
}

TEST_CASE("basic equality-form detector round trip") {
  AmbientPoint a = simple_ambient(4, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  SubmanifoldPoint eq = make_equality_basic(a, 4, 1.0, 2.0, {1.0, 0.7, 0}, {0.5, -0.2, 0});
  EqualityFormReport rep = detect_equality_form_basic(eq, coord_plane(4, 0, 1));
  CHECK(rep.matched);
  CHECK(rep.residual <= 1e-7);
  REQUIRE(rep.params.size() >= 2);
  CHECK(rep.params[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(rep.params[1] == doctest::Approx(2.0).epsilon(1e-8));

  // perturbed copy no longer matches
  std::vector<Mat> sf;
  for (int r = 0; r + 1 < eq.num_normals(); ++r) sf.push_back(eq.sigma()[r].mat());
  sf[0](0, 2) += 0.1;
  sf[0](2, 0) += 0.1;
  SubmanifoldPoint bad =
      build_submanifold(eq.ambient(), eq.tangent_frame(), eq.normal_frame(), sf);
  CHECK(!detect_equality_form_basic(bad, coord_plane(4, 0, 1)).matched);

  // totally geodesic matches with a = b = 0
  EqualityFormReport tg = detect_equality_form_basic(totally_geodesic(3, 3),
                                                     coord_plane(3, 0, 1));
  CHECK(tg.matched);
}

TEST_CASE("delta equality-form detector round trip") {
  AmbientPoint a = simple_ambient(4, FCoefficients{1, 0, 0, 0, 0, 0, 0});
  TupleSpec t{{2}};
  std::vector<BlockSpec> blocks(4);
  for (auto& b : blocks) b.blocks = {Mat::Zero(2, 2)};
  Mat b0(2, 2);
  b0 << 2, 0, 0, 0;
  blocks[0].blocks = {b0};
  SubmanifoldPoint eq = make_equality_delta(a, 4, t, blocks);
  EqualityFormReport rep = detect_equality_form_delta(eq, t);
  CHECK(rep.matched);
  CHECK(rep.residual <= 1e-7);

  // umbilical matches exactly when H = 0 (block traces 2 a_r vs tail a_r)
  CHECK(detect_equality_form_delta(make_totally_umbilical(a, 4, 0.0), t).matched);
  CHECK(!detect_equality_form_delta(make_totally_umbilical(a, 4, 1.0), t).matched);

  // off-block perturbation breaks the match
  std::vector<Mat> sf;
  for (int r = 0; r + 1 < eq.num_normals(); ++r) sf.push_back(eq.sigma()[r].mat());
  sf[1](0, 3) += 0.1;
  sf[1](3, 0) += 0.1;
  SubmanifoldPoint bad =
      build_submanifold(eq.ambient(), eq.tangent_frame(), eq.normal_frame(), sf);
  CHECK(!detect_equality_form_delta(bad, t).matched);
}

TEST_CASE("algebraic lemma behind the bounds") {
  // n = 2: a3 := 2 x y always gives equality
  ChenLemmaResult r2 = chen_lemma_check({1.5, -0.25, 2 * 1.5 * -0.25});
  CHECK(r2.holds);
  CHECK(r2.equality);

  // n = 3 hand case: (1,1,2), a4 = 2
  ChenLemmaResult r3 = chen_lemma_check({1, 1, 2, 2});
  CHECK(r3.holds);
  CHECK(r3.equality);
  CHECK(r3.margin == doctest::Approx(0.0).epsilon(1e-12));

  CHECK_THROWS_AS(chen_lemma_check({1, 1, 2, 100}), Error);
}

TEST_CASE("plane slack is minimized at the sectional infimum when the bound is plane-free") {
  // with f4 = f51 = f52 = 0 the right side does not depend on the plane
  GeneratorSpec spec;
  spec.m = 4;
  spec.n = 4;
  spec.f_source = FCoefficients{0.8, -0.2, 0.3, 0, 0, 0, 0.5};
  SubmanifoldPoint s = make_random_submanifold(make_ambient(spec), 4, 1.0, 77);
  SearchBudget budget;
  ExtremumResult inf = inf_sectional(s, budget);
  double wit = check_chen_fundamental(s, Subspace(inf.witness)).slack;
  Rng g(5);
  for (int rep = 0; rep < 40; ++rep) {
    Mat b(4, 2);
    b.col(0) = g.gaussian_vector(4);
    b.col(1) = g.gaussian_vector(4);
    CHECK(wit <= check_chen_fundamental(s, Subspace(orthonormalize_columns(b))).slack + 1e-10);
  }
}
