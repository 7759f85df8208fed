#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <numbers>

namespace islands::numeric {

inline constexpr double pi = std::numbers::pi;

// log(sinh x) for x > 0, finite for arguments far beyond the overflow of sinh.
double log_sinh(double x);

// sinh(x) - x without cancellation near zero.
double sinh_minus_x(double x);

// cosh(d) - sinh(d)/d and sinh(d) - (cosh(d) - 1)/d; both O(d) or O(d^2) near
// zero and evaluated by series there.
double cosh_minus_sinhc(double d);
double sinh_minus_coshm1_over(double d);

// Fixed 16-point Gauss-Legendre rule mapped to [0, 1].
struct UnitRule {
  std::array<double, 16> nodes;
  std::array<double, 16> weights;
};
const UnitRule& unit_gauss16();

// Gauss-Legendre (8 points) on [a, b]; exact for polynomials up to degree 15.
double gauss8(const std::function<double(double)>& f, double a, double b);

struct QuadratureResult {
  double value;
  double error;
};

// Adaptive Gauss-Kronrod. Throws NumericError when the estimated error exceeds
// rel_tol * |value| + abs_tol.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-12, double abs_tol = 0.0);

// Root of an increasing function on [lo, hi] by safeguarded Newton.
// fdf returns (f, f'). Throws NumericError on non-convergence.
double solve_increasing(const std::function<std::pair<double, double>(double)>& fdf,
                        double lo, double hi, double guess);

}  // namespace islands::numeric
