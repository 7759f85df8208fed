#include "islands/space_forms.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

#include "islands/errors.hpp"
#include "islands/numeric.hpp"

namespace islands {

using numeric::pi;

SpaceForm SpaceForm::make(int kappa, int dim) {
  if (kappa != 0 && kappa != -1) throw DomainError(fmt::format("curvature must be 0 or -1, got {}", kappa));
  if (dim != 2 && dim != 3) throw DomainError(fmt::format("dimension must be 2 or 3, got {}", dim));
  SpaceForm f;
  f.kappa = kappa;
  f.dim = dim;
  return f;
}

namespace {

void check_measure(double value, const char* what) {
  if (!(value >= 0.0)) throw DomainError(fmt::format("{} must be non-negative, got {}", what, value));
}

// log(sinh x - x) for x > 0.
double log_sinh_minus_x(double x) {
  if (x > 40.0) return numeric::log_sinh(x) + std::log1p(-x / std::sinh(x));
  return std::log(numeric::sinh_minus_x(x));
}

double h3_radius(double volume) {
  const double r_flat = std::cbrt(3.0 * volume / (4.0 * pi));
  const double log_target = std::log(volume);
  double lo = std::max(0.5 * std::log(2.0 * volume / pi), 0.5 * std::min(r_flat, 1.0));
  const double hi = r_flat;
  lo = std::min(lo, hi);
  auto fdf = [&](double r) {
    const double log_v = std::log(pi) + log_sinh_minus_x(2.0 * r);
    // d log V / dr = S / V = 4 pi sinh^2 r / V
    const double slope = std::exp(std::log(4.0 * pi) + 2.0 * numeric::log_sinh(r) - log_v);
    return std::pair<double, double>(log_v - log_target, slope);
  };
  const double guess = volume > 1.0 ? std::clamp(0.5 * std::log(2.0 * volume / pi + 1.0), lo, hi) : hi;
  return numeric::solve_increasing(fdf, lo, hi, guess);
}

}  // namespace

double enclosed_from_radius(const SpaceForm& form, double r) {
  check_measure(r, "radius");
  if (form.kappa == 0) return form.dim == 2 ? pi * r * r : 4.0 / 3.0 * pi * r * r * r;
  if (form.dim == 2) {
    const double sh = std::sinh(0.5 * r);
    return 4.0 * pi * sh * sh;
  }
  if (2.0 * r > 700.0) return std::exp(std::log(pi) + log_sinh_minus_x(2.0 * r));
  return pi * numeric::sinh_minus_x(2.0 * r);
}

double boundary_from_radius(const SpaceForm& form, double r) {
  check_measure(r, "radius");
  if (form.kappa == 0) return form.dim == 2 ? 2.0 * pi * r : 4.0 * pi * r * r;
  if (form.dim == 2) return 2.0 * pi * std::sinh(r);
  if (r > 350.0) return std::exp(std::log(4.0 * pi) + 2.0 * numeric::log_sinh(r));
  const double sh = std::sinh(r);
  return 4.0 * pi * sh * sh;
}

BallGeometry ball_from_radius(const SpaceForm& form, double r) {
  return {r, enclosed_from_radius(form, r), boundary_from_radius(form, r)};
}

double radius_from_enclosed(const SpaceForm& form, double enclosed) {
  check_measure(enclosed, "enclosed measure");
  if (enclosed == 0.0) return 0.0;
  if (form.kappa == 0) {
    return form.dim == 2 ? std::sqrt(enclosed / pi) : std::cbrt(3.0 * enclosed / (4.0 * pi));
  }
  if (form.dim == 2) return 2.0 * std::asinh(std::sqrt(enclosed / (4.0 * pi)));
  return h3_radius(enclosed);
}

double isoperimetric_min_boundary(const SpaceForm& form, double enclosed) {
  check_measure(enclosed, "enclosed measure");
  if (form.kappa == -1 && form.dim == 2) {
    // L^2 = A^2 + 4 pi A
    return std::sqrt(enclosed) * std::sqrt(enclosed + 4.0 * pi);
  }
  return boundary_from_radius(form, radius_from_enclosed(form, enclosed));
}

double half_space_bound(const SpaceForm& form, double enclosed) {
  if (form.kappa != -1) throw DomainError("half_space_bound is defined for the hyperbolic forms");
  check_measure(enclosed, "enclosed measure");
  if (enclosed == 0.0) return 0.0;
  return 0.5 * boundary_from_radius(form, radius_from_enclosed(form, 2.0 * enclosed));
}

}  // namespace islands
