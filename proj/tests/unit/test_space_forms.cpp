#include <doctest.h>

#include <cmath>

#include "islands/errors.hpp"
#include "islands/space_forms.hpp"

using namespace islands;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

const SpaceForm E2 = SpaceForm::euclidean(2);
const SpaceForm E3 = SpaceForm::euclidean(3);
const SpaceForm H2 = SpaceForm::hyperbolic(2);
const SpaceForm H3 = SpaceForm::hyperbolic(3);

}  // namespace

TEST_CASE("ball geometry closed forms") {
  const auto e2 = ball_from_radius(E2, 100.0);
  CHECK(std::abs(e2.enclosed - 31415.9) < 0.1);
  CHECK(std::abs(e2.boundary - 628.32) < 0.01);
  const auto e3 = ball_from_radius(E3, 100.0);
  CHECK(rel(e3.enclosed, 4188790.204786391) < 1e-14);
  CHECK(rel(e3.boundary, 125663.70614359173) < 1e-14);
  CHECK(rel(ball_from_radius(H3, 7.74475).enclosed, 8377640.7280355307) < 1e-13);
  CHECK(rel(ball_from_radius(H2, 2.0).boundary, 22.788236025775751) < 1e-14);
  CHECK(rel(ball_from_radius(H2, std::asinh(100.0)).enclosed, 622.06676055195606) < 1e-13);
  CHECK_THROWS_AS(SpaceForm::make(1, 2), DomainError);
  CHECK_THROWS_AS(SpaceForm::make(0, 4), DomainError);
}

TEST_CASE("H2 and H3 identities") {
  for (double r = 1e-3; r <= 200.0; r *= 1.7) {
    const auto b = ball_from_radius(H2, r);
    const double lhs = b.boundary * b.boundary;
    const double rhs = b.enclosed * b.enclosed + 4.0 * M_PI * b.enclosed;
    CHECK(rel(lhs, rhs) < 1e-9);
  }
  for (double r : {0.1, 1.0, 5.0, 20.0}) {
    const auto b = ball_from_radius(H3, r);
    CHECK(rel(b.boundary, 2.0 * M_PI * (std::cosh(2.0 * r) - 1.0)) < 1e-12);
    CHECK(rel(b.enclosed, M_PI * std::sinh(2.0 * r) - 2.0 * M_PI * r) < 1e-12);
  }
}

TEST_CASE("first variation by central differences") {
  for (const auto& f : {E2, E3, H2, H3}) {
    for (double r : {0.3, 1.0, 4.0, 12.0}) {
      const double h = 1e-5 * r;
      const double dv = (enclosed_from_radius(f, r + h) - enclosed_from_radius(f, r - h)) / (2.0 * h);
      CHECK(rel(dv, boundary_from_radius(f, r)) < 1e-6);
    }
  }
}

TEST_CASE("inverse solver") {
  CHECK(rel(radius_from_enclosed(H3, 8377580.0), 7.744746375595013) < 1e-12);
  CHECK(rel(radius_from_enclosed(E2, 31415.926535897932), 100.0) < 1e-12);
  CHECK(rel(radius_from_enclosed(H2, 62830.0), 9.9035580549973258) < 1e-12);
  CHECK(radius_from_enclosed(H2, 0.0) == 0.0);
  CHECK_THROWS_AS(radius_from_enclosed(H2, -1.0), DomainError);
  for (const auto& f : {E2, E3, H2, H3}) {
    for (double v = 1e-6; v <= 1e300; v *= 1e7) {
      const double r = radius_from_enclosed(f, v);
      CHECK(rel(enclosed_from_radius(f, r), v) < 1e-10);
    }
  }
}

TEST_CASE("isoperimetric minima and half-space bounds") {
  CHECK(rel(isoperimetric_min_boundary(H2, 62830.0), 62836.282871170062) < 1e-13);
  CHECK(rel(isoperimetric_min_boundary(H3, 8377580.0), 16755251.040169141) < 1e-11);
  CHECK(rel(isoperimetric_min_boundary(E2, M_PI), 2.0 * M_PI) < 1e-14);
  CHECK(rel(half_space_bound(H2, 20610.0), 20613.141353252807) < 1e-12);
  CHECK(rel(half_space_bound(H3, 2792526.0), 5585096.2462863175) < 1e-11);
  CHECK(half_space_bound(H2, 0.0) == 0.0);
  CHECK_THROWS_AS(half_space_bound(E2, 1.0), DomainError);
  double prev_h = 0.0, prev_i = 0.0;
  for (double a = 0.01; a < 1e6; a *= 1.9) {
    const double hs = half_space_bound(H2, a);
    const double iso = isoperimetric_min_boundary(H2, a);
    CHECK(hs < iso);
    CHECK(hs > prev_h);
    CHECK(iso > prev_i);
    prev_h = hs;
    prev_i = iso;
  }
}
