#include <doctest.h>

#include <cmath>

#include "islands/errors.hpp"
#include "islands/radial_profile.hpp"

using namespace islands;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("constants match high precision values") {
  const auto p5 = make_profile(5.0);
  CHECK(rel(p5.C(), 2.6875616587272474) < 1e-14);
  CHECK(rel(p5.params().delta, 1.4451246505234883e-6) < 1e-13);

  const auto p100 = make_profile(100.0);
  CHECK(rel(p100.C(), 94.701657634389411) < 1e-14);
  CHECK(rel(p100.params().delta, 2.2025397295785707e-90) < 1e-12);

  const auto p15 = make_profile(1.5);
  CHECK(rel(p15.C(), 0.3052367827128907) < 1e-14);
  CHECK(rel(p15.params().delta, 0.0052956987466617159) < 1e-13);
}

TEST_CASE("log-domain width agrees with direct evaluation for moderate R") {
  for (double R : {1.5, 2.0, 5.0, 10.0, 15.0}) {
    const double direct = 1.0 / (4.0 * M_PI * R * std::sinh(2.0 * R));
    CHECK(rel(make_profile(R).params().delta, direct) < 1e-12);
  }
  CHECK(std::isfinite(make_profile(300.0).params().log_delta));
}

TEST_CASE("inadmissible radii and overrides throw") {
  CHECK_THROWS_AS(make_profile(1.0), DomainError);
  CHECK_THROWS_AS(make_profile(0.5), DomainError);
  const double w = make_profile(5.0).params().delta;
  CHECK_THROWS_AS(make_profile(5.0, 2.0 * w), DomainError);
  CHECK_THROWS_AS(make_profile(5.0, 0.0), DomainError);
  CHECK_NOTHROW(make_profile(5.0, 0.5 * w));
  CHECK_THROWS_AS(make_profile(5.0).eval(-1.0), DomainError);
  CHECK_THROWS_AS(make_profile(5.0).eval_band(1.5), DomainError);
}

TEST_CASE("pieces evaluate to their closed forms") {
  const auto p = make_profile(5.0);
  const Jet flat = p.eval(1.0);
  CHECK(flat.h == 1.0);
  CHECK(flat.dh == 1.0);
  CHECK(flat.d2h == 0.0);

  const Jet far = p.eval(10.0);
  CHECK(rel(far.h, 749.41336133131865) < 1e-13);
  CHECK(rel(far.dh, std::cosh(10.0 - p.C())) < 1e-13);
  CHECK(rel(far.d2h, far.h) < 1e-15);
  for (double r : {5.5, 7.0, 12.0}) CHECK(rel(p.eval(r).h, std::sinh(r - p.C())) < 1e-12);

  const auto p100 = make_profile(100.0);
  const double r = 100.0 - 2.0 * p100.width();
  const Jet j = p100.eval(r);
  CHECK(j.h == r);
  CHECK(j.dh == 1.0);
  CHECK(j.d2h == 0.0);
  CHECK_FALSE(p100.band_resolvable());
  CHECK(p.band_resolvable());
}

TEST_CASE("band meets both neighbours") {
  for (double R : {1.5, 2.0, 5.0, 10.0, 50.0, 100.0, 200.0}) {
    const auto p = make_profile(R);
    const double w = p.width();
    const auto left = p.eval_band(-1.0);
    CHECK(left.offset == doctest::Approx(-w).epsilon(1e-14));
    CHECK(left.dh == 1.0);
    CHECK(left.d2h == 0.0);

    const auto right = p.eval_band(1.0);
    const double x = p.hyperbolic_start();
    const double S = std::sqrt(1.0 + R * R);
    // sinh(asinh R + w) - R in band-local terms
    const double offset = 2.0 * R * std::pow(std::sinh(0.5 * w), 2) + S * std::sinh(w);
    CHECK(rel(right.offset, offset) < 1e-10);
    CHECK(rel(right.dh, std::cosh(x)) < 1e-10);
    CHECK(rel(right.d2h * w, w * std::sinh(x)) < 1e-10);
  }
}

TEST_CASE("band is convex and slopes stay at least one") {
  for (double R : {1.5, 2.0, 5.0, 10.0, 50.0, 100.0, 200.0}) {
    const auto p = make_profile(R);
    const double scale = std::max(1.0, std::sinh(p.hyperbolic_start()));
    double prev_slope = 1.0;
    for (int i = 0; i <= 10000; ++i) {
      const double s = -1.0 + 2.0 * i / 10000.0;
      const auto b = p.eval_band(s);
      CHECK_MESSAGE(b.d2h >= -1e-9 * scale, "R=", R, " s=", s);
      CHECK(b.dh >= 1.0 - 1e-15);
      CHECK(b.dh >= prev_slope - 1e-15 * b.dh);
      prev_slope = b.dh;
    }
    CHECK(p.eval_band(0.0).d2h >= 0.0);
  }
}

TEST_CASE("monomial coefficients reproduce the anchored evaluation") {
  const auto p = make_profile(1.5);
  const auto c = p.band().coefficients();
  for (double s : {-1.0, -0.3, 0.0, 0.6, 1.0}) {
    double q = 0.0;
    for (int k = 5; k >= 0; --k) q = q * s + c[k];
    CHECK(q == doctest::Approx(p.band().eval(s).q).epsilon(1e-10));
  }
}

TEST_CASE("convexity scan reports per piece") {
  const auto rep = convexity_scan(make_profile(5.0), 10001);
  CHECK(rep.convex);
  CHECK(rep.pieces[0].min_d2h == 0.0);
  CHECK(rep.pieces[1].min_d2h >= -rep.tolerance);
  CHECK(rep.pieces[2].min_d2h > 0.0);
  CHECK_THROWS_AS(convexity_scan(make_profile(5.0), 2), DomainError);
  const auto p = make_profile(5.0);
  CHECK(p.piece_at(p.C()) == Piece::flat);
}
