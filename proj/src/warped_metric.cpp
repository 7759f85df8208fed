#include "islands/warped_metric.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "islands/errors.hpp"
#include "islands/numeric.hpp"

namespace islands {

using numeric::pi;

std::string_view to_string(WarpKind kind) {
  switch (kind) {
    case WarpKind::island:
      return "island";
    case WarpKind::euclidean:
      return "euclidean";
    case WarpKind::hyperbolic:
      return "hyperbolic";
    case WarpKind::spherical:
      return "spherical";
  }
  return "?";
}

WarpedMetric::WarpedMetric(WarpKind kind, int dim, std::optional<RadialProfile> profile)
    : kind_(kind), dim_(dim), profile_(std::move(profile)) {
  if (dim != 2 && dim != 3) throw DomainError(fmt::format("dimension must be 2 or 3, got {}", dim));
}

WarpedMetric WarpedMetric::island(RadialProfile profile, int dim) {
  return WarpedMetric(WarpKind::island, dim, std::move(profile));
}

WarpedMetric WarpedMetric::pure(WarpKind kind, int dim) {
  if (kind == WarpKind::island) throw DomainError("island metric needs a profile");
  return WarpedMetric(kind, dim, std::nullopt);
}

const RadialProfile& WarpedMetric::profile() const {
  if (!profile_) throw DomainError("metric has no radial profile");
  return *profile_;
}

Jet WarpedMetric::jet(double r) const {
  if (r < 0.0) throw DomainError(fmt::format("radius must be non-negative, got {}", r));
  Jet j;
  switch (kind_) {
    case WarpKind::island:
      return profile_->eval(r);
    case WarpKind::euclidean:
      j.h = r;
      j.dh = 1.0;
      j.d2h = 0.0;
      j.dh_over_h = 1.0 / r;
      j.d2h_over_h = 0.0;
      return j;
    case WarpKind::hyperbolic:
      j.h = std::sinh(r);
      j.dh = std::cosh(r);
      j.d2h = j.h;
      j.dh_over_h = 1.0 / std::tanh(r);
      j.d2h_over_h = 1.0;
      return j;
    case WarpKind::spherical:
      if (r >= pi) throw DomainError("spherical control is defined for r < pi");
      j.h = std::sin(r);
      j.dh = std::cos(r);
      j.d2h = -j.h;
      j.dh_over_h = 1.0 / std::tan(r);
      j.d2h_over_h = -1.0;
      return j;
  }
  return j;
}

namespace {

double limit_curvature(WarpKind kind) {
  switch (kind) {
    case WarpKind::hyperbolic:
      return -1.0;
    case WarpKind::spherical:
      return 1.0;
    default:
      return 0.0;
  }
}

double tangential_from_jet(const Jet& j) {
  if (std::abs(j.h) > 1e150 || !std::isfinite(j.h)) {
    return -j.dh_over_h * j.dh_over_h;
  }
  return (1.0 - j.dh) * (1.0 + j.dh) / (j.h * j.h);
}

double closed_ball(int dim, double r) {
  return dim == 2 ? pi * r * r : 4.0 / 3.0 * pi * r * r * r;
}

// Integral over [-1, s] of (R + w q)^(dim-1) ds.
double band_radial_integral(const RadialProfile& p, int dim, double s) {
  const double R = p.R();
  const double w = p.width();
  const auto& band = p.band();
  return numeric::gauss8(
      [&](double t) {
        const double h = R + w * band.eval(t).q;
        return dim == 2 ? h : h * h;
      },
      -1.0, s);
}

double band_measure_to(const RadialProfile& p, int dim, double s) {
  const double w = p.width();
  const double factor = dim == 2 ? 2.0 * pi : 4.0 * pi;
  return factor * w * band_radial_integral(p, dim, s);
}

double island_enclosed(const WarpedMetric& m, double r) {
  const auto& p = m.profile();
  const int dim = m.dim();
  const double R = p.R();
  const double w = p.width();
  switch (p.piece_at(r)) {
    case Piece::flat:
      return closed_ball(dim, r);
    case Piece::band:
      return closed_ball(dim, R - w) + band_measure_to(p, dim, (r - R) / w);
    case Piece::hyperbolic: {
      const double inner = closed_ball(dim, R - w) + band_measure_to(p, dim, 1.0);
      const double xb = p.hyperbolic_start();
      const double x = (r - R) + p.asinh_R();
      const double gap = (r - R) - w;  // x - xb
      if (dim == 2) {
        return inner + 4.0 * pi * std::sinh(0.5 * (x + xb)) * std::sinh(0.5 * gap);
      }
      return inner + 2.0 * pi * std::cosh(x + xb) * std::sinh(gap) - 2.0 * pi * gap;
    }
  }
  return 0.0;
}

}  // namespace

double gauss_curvature(const WarpedMetric& metric, double r) {
  if (r < 0.0) throw DomainError(fmt::format("radius must be non-negative, got {}", r));
  if (r == 0.0) return limit_curvature(metric.kind());
  return -metric.jet(r).d2h_over_h;
}

CurvatureSample sectional_curvatures(const WarpedMetric& metric, double r) {
  if (r < 0.0) throw DomainError(fmt::format("radius must be non-negative, got {}", r));
  CurvatureSample out;
  out.r = r;
  if (r == 0.0) {
    out.K_radial = out.K_tangential = limit_curvature(metric.kind());
    return out;
  }
  const Jet j = metric.jet(r);
  out.K_radial = -j.d2h_over_h;
  out.K_tangential = metric.dim() == 2 ? out.K_radial : tangential_from_jet(j);
  return out;
}

CurvatureSample band_curvatures(const WarpedMetric& metric, double s) {
  const Jet j = metric.profile().band_jet(s);
  CurvatureSample out;
  out.r = s;
  out.K_radial = -j.d2h_over_h;
  out.K_tangential = metric.dim() == 2 ? out.K_radial : tangential_from_jet(j);
  return out;
}

double circle_length(const WarpedMetric& metric, double r) {
  return 2.0 * pi * metric.jet(r).h;
}

double normal_curvature(const WarpedMetric& metric, double r) {
  return metric.jet(r).dh_over_h;
}

double sphere_area(const WarpedMetric& metric, double r) {
  const double h = metric.jet(r).h;
  return 4.0 * pi * h * h;
}

double boundary_measure(const WarpedMetric& metric, double r) {
  return metric.dim() == 2 ? circle_length(metric, r) : sphere_area(metric, r);
}

double enclosed_measure(const WarpedMetric& metric, double r) {
  if (r < 0.0) throw DomainError(fmt::format("radius must be non-negative, got {}", r));
  if (r == 0.0) return 0.0;
  if (metric.kind() == WarpKind::island) return island_enclosed(metric, r);
  metric.jet(r);  // domain check
  return numeric::integrate([&](double t) { return boundary_measure(metric, t); }, 0.0, r,
                            1e-12)
      .value;
}

double disk_area(const WarpedMetric& metric, double r) {
  if (metric.dim() != 2) throw DomainError("disk_area needs a 2-dimensional metric");
  return enclosed_measure(metric, r);
}

double ball_volume(const WarpedMetric& metric, double r) {
  if (metric.dim() != 3) throw DomainError("ball_volume needs a 3-dimensional metric");
  return enclosed_measure(metric, r);
}

AnnulusReport annulus_measure(const WarpedMetric& metric, std::optional<double> collar_budget) {
  const auto& p = metric.profile();
  AnnulusReport rep;
  rep.dim = metric.dim();
  rep.measure = band_measure_to(p, rep.dim, 1.0);
  const double w = p.width();
  const double sh = std::sinh(p.hyperbolic_start());
  if (rep.dim == 2) {
    rep.paper_bound = 2.0 * w * 2.0 * pi * sh;
    rep.limit = 1.0 / p.R();
  } else {
    rep.paper_bound = 2.0 * w * 4.0 * pi * sh * sh;
    rep.limit = collar_budget.value_or(0.01);
  }
  rep.measure_ok = rep.measure < rep.limit;
  rep.bound_ok = rep.paper_bound < rep.limit;
  return rep;
}

double choose_delta_3d(double R, double budget) {
  if (!(budget > 0.0)) throw ParameterError(fmt::format("collar budget must be positive, got {}", budget));
  const auto formula = make_profile(R);
  const double a = formula.asinh_R();
  auto shell_bound = [&](double w) {
    const double sh = std::sinh(a + w);
    return 8.0 * pi * w * sh * sh;
  };
  const double w0 = formula.params().delta;
  if (shell_bound(w0) < budget) return w0;

  // f(log w) = log bound - log budget is increasing in log w.
  auto f = [&](double lw) { return std::log(shell_bound(std::exp(lw))) - std::log(budget); };
  double lo = std::log(budget / (8.0 * pi * (1.0 + R * R))) - 1.0;
  while (f(lo) >= 0.0) lo -= 10.0;
  const double hi = std::log(w0);
  boost::math::tools::eps_tolerance<double> tol(48);
  const auto bracket = boost::math::tools::bisect(f, lo, hi, tol);
  double w = std::exp(bracket.first);
  while (!(shell_bound(w) < budget)) w = std::nextafter(w, 0.0);
  return w;
}

double gauss_bonnet_check(const WarpedMetric& metric, double r0) {
  if (!(r0 > 0.0)) throw DomainError(fmt::format("gauss_bonnet_check needs r0 > 0, got {}", r0));
  if (metric.dim() != 2) throw DomainError("gauss_bonnet_check needs a 2-dimensional metric");

  auto density = [&](double r) {
    if (r == 0.0) return 0.0;
    return gauss_curvature(metric, r) * circle_length(metric, r);
  };
  auto pure_integral = [&](double a, double b) {
    if (b <= a) return 0.0;
    return numeric::integrate(density, a, b, 1e-13, 1e-14).value;
  };

  double total = 0.0;
  if (metric.kind() != WarpKind::island) {
    total = pure_integral(0.0, r0);
  } else {
    const auto& p = metric.profile();
    const double R = p.R();
    const double w = p.width();
    const auto& band = p.band();
    auto band_term = [&](double s_end) {
      // K dA = -h'' 2 pi dr = -2 pi q''(s) ds
      return -2.0 * pi * numeric::gauss8([&](double s) { return band.eval(s).d2q; }, -1.0, s_end);
    };
    switch (p.piece_at(r0)) {
      case Piece::flat:
        total = pure_integral(0.0, r0);
        break;
      case Piece::band:
        total = pure_integral(0.0, R - w) + band_term((r0 - R) / w);
        break;
      case Piece::hyperbolic: {
        total = pure_integral(0.0, R - w) + band_term(1.0);
        const double start = R + w;
        if (start < r0) {
          total += numeric::integrate(
                       [&](double t) {
                         const Jet j = p.hyperbolic_jet(t);
                         return -j.d2h_over_h * 2.0 * pi * j.h;
                       },
                       0.0, (r0 - R) - w, 1e-13, 1e-14)
                       .value;
        }
        break;
      }
    }
  }
  const Jet j = metric.jet(r0);
  return std::abs(total + 2.0 * pi * j.dh - 2.0 * pi);
}

}  // namespace islands
