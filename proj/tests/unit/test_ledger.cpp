#include <doctest.h>

#include <cmath>

#include "islands/errors.hpp"
#include "islands/ledger.hpp"

using namespace islands;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

IslandConfig plane(double R, double d, double A) {
  IslandConfig c;
  c.dim = 2;
  c.R = R;
  c.d = d;
  c.target = A;
  return c;
}

IslandConfig space(double d) {
  IslandConfig c;
  c.dim = 3;
  c.R = 100.0;
  c.d = d;
  c.target = 8377580.0;
  return c;
}

PackingParams unit_eps() { return PackingParams{1.0, 1.0}; }

}  // namespace

TEST_CASE("disconnected candidate") {
  CHECK(rel(disconnected_boundary(plane(100, 1000, 62830)).candidate.boundary, 1256.6185305813271) < 1e-13);
  CHECK(rel(disconnected_boundary(plane(5, 32, 157)).candidate.boundary, 62.815924516867379) < 1e-13);
  const auto d3 = disconnected_boundary(space(6e5));
  CHECK(rel(d3.per_island_radius, 99.999998370361653) < 1e-13);
  CHECK(rel(d3.candidate.boundary, 251327.40409572775) < 1e-13);
  CHECK_THROWS_AS(disconnected_boundary(plane(5, 32, 200)), InfeasibleError);
}

TEST_CASE("equal split is the symmetric stationary split") {
  const auto c = plane(100, 1000, 62830);
  const double even = split_boundary(c, 0.5);
  CHECK(rel(even, disconnected_boundary(c).candidate.boundary) < 1e-14);
  // A 1% shift overfills one island.
  CHECK_THROWS_AS(split_boundary(c, 0.49), InfeasibleError);
  CHECK_THROWS_AS(split_boundary(c, 0.51), InfeasibleError);

  // Inside the feasible window the flat boundary is concave in the split.
  const auto desk = plane(5, 32, 157);
  const double e = split_boundary(desk, 0.5);
  const double lo = split_boundary(desk, 0.499), hi = split_boundary(desk, 0.501);
  CHECK(rel(lo, hi) < 1e-13);
  CHECK(lo < e);
  CHECK(e - lo < 1e-4);
}

TEST_CASE("connected case bounds") {
  CHECK(rel(bound_avoiding_both(plane(100, 1000, 62830)).boundary, 62836.282871170062) < 1e-13);
  CHECK(rel(bound_avoiding_both(plane(5, 32, 157)).boundary, 163.16225110746171) < 1e-13);
  CHECK(rel(bound_avoiding_both(space(6e5)).boundary, 16755251.040169141) < 1e-11);

  const auto one = bound_meets_one(plane(100, 1000, 62830));
  CHECK(rel(one.exact.boundary, 31417.204899682417) < 1e-10);
  CHECK(rel(one.paper.boundary, 20946.474690395863) < 1e-12);
  CHECK(rel(bound_meets_one(plane(5, 32, 157)).exact.boundary, 81.341176374078977) < 1e-10);
  CHECK(rel(bound_meets_one(plane(5, 32, 157)).paper.boundary, 55.385899007360253) < 1e-12);
  CHECK(rel(bound_meets_one(space(6e5)).exact.boundary, 8377625.0905116274) < 1e-9);

  CHECK(bound_meets_both(plane(100, 1000, 62830), std::nullopt).used.boundary == 2000.0);
  const auto both = bound_meets_both(space(589300), unit_eps());
  CHECK(both.balls == 147325.0);
  CHECK(rel(both.per_ball, 3.4122762652849023) < 1e-14);
  CHECK(rel(both.model->boundary, 502713.60078309823) < 1e-13);
  CHECK(rel(bound_meets_both(space(6e5), unit_eps()).used.boundary, 255920.71989636767) < 1e-13);
  CHECK_THROWS_AS(bound_meets_both(space(6e5), std::nullopt), ParameterError);
  CHECK_THROWS_AS(bound_meets_both(space(6e5), PackingParams{1.0, 0.5}), ParameterError);
}

TEST_CASE("separation thresholds") {
  const auto t = min_separation_3d(space(6e5), unit_eps(), 251328.0);
  CHECK(rel(t.paper, 589232.4781716132) < 1e-13);
  CHECK(t.model == 294620.0);
  CHECK(min_separation_3d(space(6e5), unit_eps(), 0.0).paper == 0.0);
  const auto def = min_separation_3d(space(6e5), unit_eps());
  CHECK(def.target_area == doctest::Approx(251328.40409572775));
}

TEST_CASE("best epsilon sits at the admissibility cap") {
  const double eps = best_epsilon(space(6e5), 0.5);
  CHECK(eps == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("verdicts") {
  const auto v2 = verdict(plane(100, 1000, 62830), std::nullopt);
  CHECK(v2.certified);
  CHECK(v2.min_connected_bound == 2000.0);
  CHECK(v2.weakest_case == CaseKind::meets_both);
  CHECK(v2.margin == doctest::Approx(743.38).epsilon(1e-4));

  const auto v3 = verdict(space(6e5), unit_eps());
  CHECK(v3.certified);

  const auto control = verdict(plane(100, 100, 62830), std::nullopt);
  CHECK_FALSE(control.certified);
  REQUIRE(control.failing_cases.size() == 1);
  CHECK(control.failing_cases[0] == "meets_both");

  const auto tiny = verdict(plane(100, 1000, 1.0), std::nullopt);
  CHECK_FALSE(tiny.certified);

  const auto desk = verdict(plane(5, 32, 157), std::nullopt);
  CHECK(desk.certified);
  CHECK(desk.margin == doctest::Approx(64.0 - 62.815924516867379));
}

TEST_CASE("margins grow with separation") {
  double prev_margin = -1e300, prev_both = -1e300;
  for (double d = 100; d <= 3000; d += 100) {
    const auto v = verdict(plane(100, d, 62830), std::nullopt);
    CHECK(v.margin >= prev_margin);
    CHECK(v.cases[2].margin > prev_both);
    prev_margin = v.margin;
    prev_both = v.cases[2].margin;
  }
}
