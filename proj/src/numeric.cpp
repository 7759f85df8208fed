#include "islands/numeric.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>
#include <fmt/format.h>
#include <limits>

#include "islands/errors.hpp"

namespace islands::numeric {

double log_sinh(double x) {
  if (!(x > 0.0)) throw DomainError("log_sinh requires x > 0");
  if (x > 20.0) return x - std::log(2.0) + std::log1p(-std::exp(-2.0 * x));
  return std::log(std::sinh(x));
}

double sinh_minus_x(double x) {
  if (std::abs(x) < 0.5) {
    const double x2 = x * x;
    double term = x * x2 / 6.0;
    double sum = term;
    for (int k = 2; k < 30; ++k) {
      term *= x2 / ((2.0 * k) * (2.0 * k + 1.0));
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::sinh(x) - x;
}

double cosh_minus_sinhc(double d) {
  // sum_{k>=1} d^{2k} (2k) / (2k+1)!
  if (std::abs(d) < 1e-2) {
    const double d2 = d * d;
    double power = d2;
    double fact = 6.0;  // 3!
    double sum = 0.0;
    for (int k = 1; k < 12; ++k) {
      sum += power * (2.0 * k) / fact;
      power *= d2;
      fact *= (2.0 * k + 2.0) * (2.0 * k + 3.0);
    }
    return sum;
  }
  return std::cosh(d) - std::sinh(d) / d;
}

double sinh_minus_coshm1_over(double d) {
  // sum_{k>=0} d^{2k+1} (2k+1) / (2k+2)!
  if (std::abs(d) < 1e-2) {
    const double d2 = d * d;
    double power = d;
    double fact = 2.0;  // 2!
    double sum = 0.0;
    for (int k = 0; k < 12; ++k) {
      sum += power * (2.0 * k + 1.0) / fact;
      power *= d2;
      fact *= (2.0 * k + 3.0) * (2.0 * k + 4.0);
    }
    return sum;
  }
  return std::sinh(d) - (std::cosh(d) - 1.0) / d;
}

const UnitRule& unit_gauss16() {
  static const UnitRule rule = [] {
    using G = boost::math::quadrature::gauss<double, 16>;
    UnitRule r{};
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    // Boost stores the non-negative half of the symmetric rule.
    std::size_t k = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      r.nodes[k] = 0.5 * (1.0 - x[i]);
      r.weights[k] = 0.5 * w[i];
      ++k;
      r.nodes[k] = 0.5 * (1.0 + x[i]);
      r.weights[k] = 0.5 * w[i];
      ++k;
    }
    return r;
  }();
  return rule;
}

double gauss8(const std::function<double(double)>& f, double a, double b) {
  return boost::math::quadrature::gauss<double, 8>::integrate(f, a, b);
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol) {
  if (a == b) return {0.0, 0.0};
  double error = 0.0;
  const double value =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, rel_tol, &error);
  if (!std::isfinite(value) || error > rel_tol * std::abs(value) + abs_tol + 1e-300) {
    // Boost stops at rel_tol relative to the running estimate; accept a small
    // excess caused by its termination heuristic but nothing worse.
    if (!std::isfinite(value) || error > 100.0 * (rel_tol * std::abs(value) + abs_tol) + 1e-300) {
      throw NumericError(fmt::format(
          "quadrature on [{:.17g}, {:.17g}] did not converge: value {:.17g}, achieved error {:.3g}",
          a, b, value, error));
    }
  }
  return {value, error};
}

double solve_increasing(const std::function<std::pair<double, double>(double)>& fdf,
                        double lo, double hi, double guess) {
  std::uintmax_t max_iter = 200;
  const int digits = std::numeric_limits<double>::digits - 6;
  const double root = boost::math::tools::newton_raphson_iterate(
      [&](double x) { return fdf(x); }, guess, lo, hi, digits, max_iter);
  if (max_iter >= 200 || !std::isfinite(root)) {
    throw NumericError(fmt::format("monotone root search on [{:.17g}, {:.17g}] did not converge", lo, hi));
  }
  return root;
}

}  // namespace islands::numeric
