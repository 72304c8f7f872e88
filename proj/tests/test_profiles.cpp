#include <doctest.h>

#include "qnmcav/errors.hpp"
#include "qnmcav/profile.hpp"

using namespace qnmcav;

TEST_CASE("rod construction") {
  auto p = make_dielectric_rod(5, 1, 1);
  CHECK(p.segments.size() == 1);
  CHECK(rho_at(p, 0.5) == 25.0);
  CHECK(rho_at(p, 2.0) == 1.0);
  CHECK(rho_at(p, 1.0, Side::Inside) == 25.0);
  CHECK(rho_at(p, 1.0) == 1.0);
  CHECK(validate(p).empty());

  auto q = make_dielectric_rod(1, 2, 1);
  CHECK(q.segments[0].rho == 1.0);
  CHECK(q.rho_out == 4.0);
}

TEST_CASE("rod rejects bad parameters") {
  try {
    make_dielectric_rod(5, 5, 1);
    FAIL("expected throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InfiniteDissipation);
  }
  CHECK_THROWS_AS(make_dielectric_rod(-1, 1, 1), Error);
  CHECK_THROWS_AS(make_dielectric_rod(2, 1, 0), Error);
  CHECK_THROWS_AS(rho_at(make_dielectric_rod(2, 1, 1), -0.1), Error);
}

TEST_CASE("validate reports violations") {
  CavityProfile nostep{{{0.0, 4.0}, {0.5, 1.0}}, 1.0, 1.0};
  auto v = validate(nostep);
  REQUIRE(v.size() == 1);
  CHECK(v[0] == Violation::NoStepAtBoundary);

  CavityProfile zero{{{0.0, 0.0}}, 1.0, 1.0};
  v = validate(zero);
  REQUIRE(!v.empty());
  CHECK(v[0] == Violation::NonPositiveDensity);

  CavityProfile unordered{{{0.0, 4.0}, {0.6, 2.0}, {0.3, 3.0}}, 1.0, 1.0};
  CHECK(validate(unordered) == std::vector<Violation>{Violation::EdgesNotIncreasing});
}

TEST_CASE("piecewise-constant lookup") {
  CavityProfile p{{{0.0, 4.0}, {0.4, 9.0}}, 1.0, 1.0};
  CHECK(rho_at(p, 0.1) == rho_at(p, 0.39));
  CHECK(rho_at(p, 0.4) == 9.0);
  CHECK(rho_at(p, 0.41) == rho_at(p, 0.99));
  for (double n : {0.3, 0.5, 2.0, 5.0, 50.0})
    for (double n0 : {0.7, 1.0, 3.0})
      if (n != n0) CHECK(validate(make_dielectric_rod(n, n0, 1.3)).empty());
}

TEST_CASE("profile JSON") {
  auto p = profile_from_json(R"({"segments":[{"x0":0.0,"rho":25.0}],"a":1.0,"rho_out":1.0})");
  CHECK(p.segments[0].rho == 25.0);
  auto r = profile_from_json(R"({"rod":{"n":5,"n0":1,"a":1}})");
  CHECK(r.segments[0].rho == 25.0);
  CHECK(profile_from_json(profile_to_json(p)).a == 1.0);
  CHECK_THROWS_AS(profile_from_json("{bad"), Error);
}
