#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "islands/curve_flow.hpp"
#include "islands/errors.hpp"
#include "islands/numeric.hpp"
#include "islands/warped_metric.hpp"

using namespace islands;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

double oracle_length(double A) { return std::sqrt(A * A + 4.0 * numeric::pi * A); }

}  // namespace

TEST_CASE("geodesic circle measures") {
  const double two_pi = 2.0 * numeric::pi;
  const auto disk = ConformalChart::hyperbolic();
  const auto uhp = ConformalChart::hyperbolic_half_plane();
  for (const auto* chart : {&disk, &uhp}) {
    const Point c = chart->half_plane() ? Point(0.3, 2.0) : Point(0.2, -0.1);
    const MultiCurve m{{geodesic_circle(*chart, c, 2.0, 1024)}};
    CHECK(rel(curve_length(*chart, m), two_pi * std::sinh(2.0)) < 1e-4);
    CHECK(rel(enclosed_area(*chart, m), two_pi * (std::cosh(2.0) - 1.0)) < 1e-4);
  }
}

TEST_CASE("island circle measures") {
  const auto single = ConformalChart::single_island(5.0);
  const MultiCurve inner{{island_circle(single, 0, 3.0, 512)}};
  CHECK(rel(curve_length(single, inner), 6.0 * numeric::pi) < 1e-4);
  CHECK(rel(enclosed_area(single, inner), 9.0 * numeric::pi) < 1e-4);

  // a circle around the whole island picks up the collar and the hyperbolic annulus
  const auto metric = WarpedMetric::island(make_profile(5.0), 2);
  const MultiCurve outer{{island_circle(single, 0, 6.25, 1024)}};
  CHECK(rel(curve_length(single, outer), circle_length(metric, 6.25)) < 1e-4);
  CHECK(rel(enclosed_area(single, outer), disk_area(metric, 6.25)) < 1e-4);

  const auto twin = ConformalChart::twin_island(5.0, 32.0);
  const MultiCurve pair{{island_circle(twin, 0, 4.0, 512), island_circle(twin, 1, 4.0, 512, 1.0, 0.3)}};
  CHECK(rel(curve_length(twin, pair), 16.0 * numeric::pi) < 1e-4);
  CHECK(rel(enclosed_area(twin, pair), 32.0 * numeric::pi) < 1e-4);
}

TEST_CASE("polygon area does not depend on the starting vertex") {
  const auto twin = ConformalChart::twin_island(1.5, 1.0);
  auto poly = island_circle(twin, 1, 2.0, 64, 1.1, 0.2);
  const double a = polygon_area(twin, poly);
  std::rotate(poly.begin(), poly.begin() + 17, poly.end());
  CHECK(polygon_area(twin, poly) == doctest::Approx(a).epsilon(1e-12));
}

TEST_CASE("curve validation") {
  const auto disk = ConformalChart::hyperbolic();
  CHECK_THROWS_AS(validate(MultiCurve{{geodesic_circle(disk, 0.0, 1.0, 8)}}), GeometryError);
  auto reversed = geodesic_circle(disk, 0.0, 1.0, 32);
  std::reverse(reversed.begin(), reversed.end());
  CHECK_THROWS_AS(validate(MultiCurve{{reversed}}), GeometryError);

  Polygon eight;
  for (int i = 0; i < 64; ++i) {
    const double t = 2.0 * numeric::pi * i / 64;
    eight.emplace_back(0.5 * std::sin(t), 0.3 * std::sin(2 * t));
  }
  CHECK(find_intersection(MultiCurve{{eight}}).has_value());
  CHECK_THROWS_AS(curve_length(disk, MultiCurve{{eight}}), GeometryError);

  const MultiCurve overlap{{geodesic_circle(disk, 0.1, 0.5, 32), geodesic_circle(disk, -0.1, 0.5, 32)}};
  CHECK(find_intersection(overlap).has_value());
}

TEST_CASE("close approach detection") {
  Polygon slab;
  for (int i = 0; i < 20; ++i) slab.emplace_back(-0.5 + 0.05 * i, -0.001);
  for (int i = 0; i < 20; ++i) slab.emplace_back(0.5 - 0.05 * i, 0.001);
  const MultiCurve m{{slab}};
  CHECK_FALSE(find_intersection(m).has_value());
  const auto hit = find_close_approach(m);
  REQUIRE(hit.has_value());
  CHECK(hit->distance == doctest::Approx(0.002));
  CHECK_FALSE(find_close_approach(MultiCurve{{geodesic_circle(ConformalChart::hyperbolic(), 0.0, 1.0, 64)}}));
}

TEST_CASE("gradients match finite differences") {
  const auto twin = ConformalChart::twin_island(1.5, 1.0);
  const MultiCurve m{{island_circle(twin, 0, 1.5, 48, 1.2, 0.4)}};
  const auto g = curve_gradients(twin, m);
  for (std::size_t i : {0u, 7u, 30u}) {
    const double h = 1e-7 * std::abs(m.components[0][i]);
    for (Point dir : {Point(1, 0), Point(0, 1)}) {
      MultiCurve plus = m, minus = m;
      plus.components[0][i] += h * dir;
      minus.components[0][i] -= h * dir;
      const double dl = (curve_length(twin, plus) - curve_length(twin, minus)) / (2 * h);
      const double da = (enclosed_area(twin, plus) - enclosed_area(twin, minus)) / (2 * h);
      const double gl = dir.real() * g.length[0][i].real() + dir.imag() * g.length[0][i].imag();
      const double ga = dir.real() * g.area[0][i].real() + dir.imag() * g.area[0][i].imag();
      CHECK(gl == doctest::Approx(dl).epsilon(1e-5));
      CHECK(ga == doctest::Approx(da).epsilon(1e-5));
    }
  }
}

TEST_CASE("flow reaches the hyperbolic isoperimetric profile") {
  const auto disk = ConformalChart::hyperbolic();
  for (double A : {1.0, 10.0}) {
    double first = 0.0;
    for (std::uint64_t seed : {1u, 2u}) {
      const auto res = run_flow(disk, MultiCurve{{seeded_ellipse(disk, A, seed, 128)}}, A);
      CHECK(res.status == FlowStatus::converged);
      CHECK(rel(res.state.length, oracle_length(A)) < 1e-3);
      CHECK(res.max_area_deviation <= 1e-6);
      CHECK(res.max_length_increase <= 1e-12);
      CHECK(res.kg_relative_spread < 1e-2);
      for (std::size_t i = 1; i < res.trace.size(); ++i) {
        CHECK(res.trace[i].length - res.trace[i - 1].length <= 1e-12 * res.trace[i - 1].length);
      }
      if (seed == 1) first = res.state.length;
      else CHECK(rel(res.state.length, first) < 1e-3);
      for (const auto& c : convexity_diagnostic(disk, res.state.curve)) {
        CHECK(c.nonpositive == 0);
        CHECK(c.min_curvature > 0.0);
      }
    }
  }
}

TEST_CASE("centred island circle is stationary") {
  const auto single = ConformalChart::single_island(5.0);
  const MultiCurve circle{{island_circle(single, 0, 3.0, 128)}};
  auto state = make_flow_state(single, circle, enclosed_area(single, circle));
  for (int i = 0; i < 10; ++i) {
    const double before = state.length;
    flow_step(single, state);
    CHECK(std::abs(state.length - before) < 1e-9);
  }
  CHECK(state.kg_spread < 1e-6);
}

TEST_CASE("flow parameter errors") {
  const auto disk = ConformalChart::hyperbolic();
  const MultiCurve m{{seeded_ellipse(disk, 10.0, 3, 64)}};
  CHECK_THROWS_AS(make_flow_state(disk, m, 20.0), ParameterError);
  CHECK_THROWS_AS(make_flow_state(disk, m, -1.0), ParameterError);
  CHECK_NOTHROW(make_flow_state(disk, m, 11.0));
}

TEST_CASE("convexity diagnostic flags a dumbbell") {
  const auto disk = ConformalChart::hyperbolic();
  const auto report = convexity_diagnostic(disk, MultiCurve{{dumbbell(128)}});
  REQUIRE(report.size() == 1);
  CHECK(report[0].sign_change);
  CHECK(report[0].min_curvature < 0.0);
  CHECK(report[0].max_curvature > 0.0);
}
