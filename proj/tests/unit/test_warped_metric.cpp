#include <doctest.h>

#include <cmath>

#include "islands/errors.hpp"
#include "islands/numeric.hpp"
#include "islands/space_forms.hpp"
#include "islands/warped_metric.hpp"

using namespace islands;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("curvature of pure warps") {
  const auto flat = WarpedMetric::pure(WarpKind::euclidean, 2);
  const auto hyp = WarpedMetric::pure(WarpKind::hyperbolic, 2);
  CHECK(gauss_curvature(flat, 3.0) == 0.0);
  CHECK(gauss_curvature(hyp, 2.0) == -1.0);
  CHECK(gauss_curvature(hyp, 0.0) == -1.0);
  CHECK(gauss_curvature(flat, 0.0) == 0.0);
  CHECK_THROWS_AS(gauss_curvature(flat, -1.0), DomainError);

  const auto flat3 = WarpedMetric::pure(WarpKind::euclidean, 3);
  CHECK(sectional_curvatures(flat3, 2.0).K_tangential == 0.0);
  CHECK(sectional_curvatures(WarpedMetric::pure(WarpKind::spherical, 3), 1.0).K_tangential ==
        doctest::Approx(1.0));
}

TEST_CASE("island curvature by piece") {
  const auto m = WarpedMetric::island(make_profile(5.0), 3);
  CHECK(gauss_curvature(WarpedMetric::island(make_profile(5.0), 2), 10.0) == doctest::Approx(-1.0).epsilon(1e-12));
  const auto flat = sectional_curvatures(m, 2.0);
  CHECK(flat.K_radial == 0.0);
  CHECK(flat.K_tangential == 0.0);
  const auto far = sectional_curvatures(m, 10.0);
  CHECK(std::abs(far.K_tangential + 1.0) < 1e-9);
  CHECK(std::abs(far.K_radial + 1.0) < 1e-12);
  const auto mid = band_curvatures(m, 0.0);
  CHECK(mid.K_radial <= 0.0);
  CHECK(mid.K_tangential <= 0.0);
}

TEST_CASE("nonpositivity across samples") {
  for (double R : {1.5, 2.0, 5.0, 10.0, 50.0, 100.0, 200.0}) {
    for (int dim : {2, 3}) {
      const auto m = WarpedMetric::island(make_profile(R), dim);
      const auto& p = m.profile();
      double worst = -1e300;
      for (int i = 0; i <= 3333; ++i) {
        const double s = -1.0 + 2.0 * i / 3333.0;
        const auto c = band_curvatures(m, s);
        worst = std::max({worst, c.K_radial, c.K_tangential});
      }
      for (int i = 1; i <= 3333; ++i) {
        const double r = (p.R() - p.width()) * i / 3333.0;
        const auto c = sectional_curvatures(m, r);
        worst = std::max({worst, c.K_radial, c.K_tangential});
      }
      for (int i = 0; i <= 3333; ++i) {
        const double r = R + 0.5 + 2.0 * R * i / 3333.0;
        const auto c = sectional_curvatures(m, r);
        worst = std::max({worst, c.K_radial, c.K_tangential});
      }
      CHECK_MESSAGE(worst <= 1e-9, "R=", R, " dim=", dim);
    }
  }
}

TEST_CASE("circle length and normal curvature") {
  const auto flat = WarpedMetric::pure(WarpKind::euclidean, 2);
  CHECK(circle_length(flat, 3.0) == doctest::Approx(6.0 * M_PI));
  CHECK(normal_curvature(flat, 3.0) == doctest::Approx(1.0 / 3.0));
  const auto p = make_profile(100.0);
  const auto m = WarpedMetric::island(p, 2);
  CHECK(rel(circle_length(m, 100.0 + 2.0 * p.width()), 628.31853071795865) < 1e-13);
  CHECK(normal_curvature(WarpedMetric::pure(WarpKind::hyperbolic, 2), 30.0) == doctest::Approx(1.0));
}

TEST_CASE("pure measures equal space-form closed forms") {
  for (int dim : {2, 3}) {
    const auto fm = WarpedMetric::pure(WarpKind::euclidean, dim);
    const auto hm = WarpedMetric::pure(WarpKind::hyperbolic, dim);
    for (double r : {0.01, 0.5, 2.0, 7.0, 20.0}) {
      CHECK(rel(enclosed_measure(fm, r), enclosed_from_radius(SpaceForm::euclidean(dim), r)) < 1e-10);
      CHECK(rel(enclosed_measure(hm, r), enclosed_from_radius(SpaceForm::hyperbolic(dim), r)) < 1e-10);
      CHECK(rel(boundary_measure(hm, r), boundary_from_radius(SpaceForm::hyperbolic(dim), r)) < 1e-12);
    }
  }
  CHECK(rel(disk_area(WarpedMetric::pure(WarpKind::hyperbolic, 2), 2.0), 17.355387381771437) < 1e-12);
}

TEST_CASE("island measures") {
  const auto p = make_profile(100.0);
  const auto m3 = WarpedMetric::island(p, 3);
  CHECK(ball_volume(m3, 99.9) == doctest::Approx(4.0 / 3.0 * M_PI * std::pow(99.9, 3)));
  CHECK(std::abs(ball_volume(m3, 100.0) - 4188790.204786391) < 1.0);
  CHECK_THROWS_AS(disk_area(m3, 1.0), DomainError);

  const auto p5 = make_profile(5.0);
  const auto m2 = WarpedMetric::island(p5, 2);
  // Past the band the area grows like the hyperbolic plane.
  const double a1 = disk_area(m2, 6.0), a2 = disk_area(m2, 8.0);
  const double x1 = 6.0 - p5.C(), x2 = 8.0 - p5.C();
  CHECK(rel(a2 - a1, 2.0 * M_PI * (std::cosh(x2) - std::cosh(x1))) < 1e-10);

  // Additivity against direct quadrature of the boundary measure.
  const double q = numeric::integrate([&](double r) { return circle_length(m2, r); }, 6.0, 8.0).value;
  CHECK(rel(a2 - a1, q) < 1e-10);
}

TEST_CASE("measures increase with radius") {
  const auto m2 = WarpedMetric::island(make_profile(1.5), 2);
  const auto m3 = WarpedMetric::island(make_profile(1.5), 3);
  double prev_a = 0.0, prev_v = 0.0, prev_l = 0.0, prev_s = 0.0;
  for (int i = 1; i <= 400; ++i) {
    const double r = 0.01 * i;
    CHECK(disk_area(m2, r) > prev_a);
    CHECK(ball_volume(m3, r) > prev_v);
    CHECK(circle_length(m2, r) > prev_l);
    CHECK(sphere_area(m3, r) > prev_s);
    prev_a = disk_area(m2, r);
    prev_v = ball_volume(m3, r);
    prev_l = circle_length(m2, r);
    prev_s = sphere_area(m3, r);
  }
  // Through the band in local coordinates.
  const auto& p = m2.profile();
  double prev = disk_area(m2, p.R() - p.width());
  for (int i = 1; i <= 20; ++i) {
    const double r = p.R() - p.width() + 2.0 * p.width() * i / 20.0;
    const double a = disk_area(m2, r);
    CHECK(a > prev);
    prev = a;
  }
}

TEST_CASE("annulus measure and paper bound") {
  for (double R : {1.5, 5.0, 100.0}) {
    const auto rep = annulus_measure(WarpedMetric::island(make_profile(R), 2));
    CHECK(rep.measure < 1.0 / R);
    CHECK(rep.measure <= rep.paper_bound);
    CHECK(rep.measure_ok);
  }
  const auto rep5 = annulus_measure(WarpedMetric::island(make_profile(5.0), 2));
  CHECK(rep5.paper_bound == doctest::Approx(4.0 * M_PI * 5.0 * 1.4451246505234883e-6).epsilon(1e-6));
  // end of the inequality chain: 4 pi sinh(2R) width = 1/R
  CHECK(rep5.paper_bound < 4.0 * M_PI * std::sinh(10.0) * 1.4451246505234883e-6);
  CHECK(4.0 * M_PI * std::sinh(10.0) * 1.4451246505234883e-6 == doctest::Approx(0.2).epsilon(1e-12));

  const double w = choose_delta_3d(100.0, 0.01);
  CHECK(w == make_profile(100.0).params().delta);
  const auto rep3 = annulus_measure(WarpedMetric::island(make_profile(100.0, w), 3), 0.01);
  CHECK(rep3.measure < 0.01);
  CHECK(rep3.bound_ok);
}

TEST_CASE("choose_delta_3d narrows the band for tight budgets") {
  const double formula = make_profile(5.0).params().delta;
  CHECK(choose_delta_3d(5.0, 1e300) == formula);
  const double w = choose_delta_3d(5.0, 1e-12);
  CHECK(w < formula);
  const double sh = std::sinh(std::asinh(5.0) + w);
  CHECK(8.0 * M_PI * w * sh * sh < 1e-12);
  CHECK(8.0 * M_PI * w * sh * sh > 0.99e-12);
  CHECK_THROWS_AS(choose_delta_3d(5.0, 0.0), ParameterError);
}

TEST_CASE("Gauss-Bonnet defect") {
  CHECK(gauss_bonnet_check(WarpedMetric::pure(WarpKind::euclidean, 2), 2.0) < 1e-12);
  CHECK(gauss_bonnet_check(WarpedMetric::pure(WarpKind::hyperbolic, 2), 3.0) < 1e-10);
  CHECK(gauss_bonnet_check(WarpedMetric::island(make_profile(5.0), 2), 10.0) < 1e-8);
  CHECK(gauss_bonnet_check(WarpedMetric::island(make_profile(5.0), 2), 3.0) == 0.0);
}
