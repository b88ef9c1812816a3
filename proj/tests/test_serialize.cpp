#include "doctest.h"
#include "chenbounds/serialize.hpp"
#include "helpers.hpp"

using namespace chen;
using namespace chen::testing;

TEST_CASE("ambient round trip is bit-faithful") {
  GeneratorSpec spec;
  spec.m = 3;
  spec.n = 3;
  spec.f_source = FCoefficients{0.1, -0.2, 0.3, 1.0 / 3.0, 0.5, -0.7, 2.0};
  spec.seed = 5;
  AmbientPoint a = make_ambient(spec);
  Json j = ambient_to_json(a);
  AmbientPoint b = ambient_from_json(Json::parse(dump_canonical(j)));
  CHECK(b.m == a.m);
  CHECK((b.phi.mat() - a.phi.mat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((b.h.mat() - a.h.mat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(b.f.f51 == a.f.f51);
  CHECK(dump_canonical(ambient_to_json(b)) == dump_canonical(j));
}

TEST_CASE("instance round trip rebuilds the xi slice") {
  GeneratorSpec spec;
  spec.m = 4;
  spec.n = 3;
  spec.f_source = FCoefficients{1, 0.5, 0, 1, 0.5, -0.5, 1};
  spec.seed = 9;
  AmbientPoint a = make_ambient(spec);
  SubmanifoldPoint s = make_random_submanifold(a, 3, 1.0, 9);
  Json j = instance_to_json(s);
  CHECK(j["schema_version"] == 1);
  // xi slice omitted: one entry per non-xi normal only
  CHECK(static_cast<int>(j["sigma"].size()) == s.num_normals() - 1);
  SubmanifoldPoint r = instance_from_json(j);
  CHECK((r.tangent_frame() - s.tangent_frame()).cwiseAbs().maxCoeff() == 0.0);
  for (int k = 0; k < s.num_normals(); ++k)
    CHECK((r.sigma()[k].mat() - s.sigma()[k].mat()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(dump_canonical(instance_to_json(r)) == dump_canonical(j));
}

TEST_CASE("schema violations are rejected") {
  SubmanifoldPoint s = totally_geodesic(3, 3);
  Json j = instance_to_json(s);
  Json bad = j;
  bad["schema_version"] = 2;
  CHECK_THROWS_AS(instance_from_json(bad), Error);
  Json missing = j;
  missing.erase("tangent_frame");
  CHECK_THROWS_AS(instance_from_json(missing), Error);
}

TEST_CASE("report serialization carries the contract fields") {
  InequalityReport r = check_scalar_identity(diag1233());
  Json j = report_to_json(r);
  for (const char* key : {"name", "lhs", "rhs", "slack", "equality", "mode", "witness",
                          "tolerances"})
    CHECK(j.contains(key));
  CHECK(j["mode"] == "exact");
  CHECK(j["equality"] == true);
}
