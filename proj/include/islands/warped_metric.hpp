#pragma once

#include <optional>
#include <string_view>

#include "islands/radial_profile.hpp"

namespace islands {

// island: h from a RadialProfile. The others are closed-form warps used as
// oracles and controls (h = r, sinh r, sin r).
enum class WarpKind { island, euclidean, hyperbolic, spherical };

std::string_view to_string(WarpKind kind);

class WarpedMetric {
 public:
  static WarpedMetric island(RadialProfile profile, int dim);
  static WarpedMetric pure(WarpKind kind, int dim);

  int dim() const { return dim_; }
  WarpKind kind() const { return kind_; }
  const RadialProfile& profile() const;  // throws unless kind() == island

  Jet jet(double r) const;

 private:
  WarpedMetric(WarpKind kind, int dim, std::optional<RadialProfile> profile);
  WarpKind kind_;
  int dim_;
  std::optional<RadialProfile> profile_;
};

struct CurvatureSample {
  double r = 0.0;  // or s for band samples
  double K_radial = 0.0;
  double K_tangential = 0.0;
};

double gauss_curvature(const WarpedMetric& metric, double r);
CurvatureSample sectional_curvatures(const WarpedMetric& metric, double r);
// Curvatures at band coordinate s of an island metric.
CurvatureSample band_curvatures(const WarpedMetric& metric, double s);

double circle_length(const WarpedMetric& metric, double r);
double normal_curvature(const WarpedMetric& metric, double r);

double disk_area(const WarpedMetric& metric, double r);
double ball_volume(const WarpedMetric& metric, double r);
double sphere_area(const WarpedMetric& metric, double r);

// Area (dim 2) or volume (dim 3) enclosed by the distance sphere of radius r.
double enclosed_measure(const WarpedMetric& metric, double r);
// Length (dim 2) or area (dim 3) of that sphere.
double boundary_measure(const WarpedMetric& metric, double r);

struct AnnulusReport {
  int dim = 2;
  double measure = 0.0;      // exact band annulus area or shell volume
  double paper_bound = 0.0;  // 2 width * boundary measure at R + width
  double limit = 0.0;        // 1/R in dim 2, the collar budget in dim 3
  bool measure_ok = false;   // measure < limit
  bool bound_ok = false;     // paper_bound < limit
};

// collar_budget is only used in dim 3 (default 0.01).
AnnulusReport annulus_measure(const WarpedMetric& metric,
                              std::optional<double> collar_budget = std::nullopt);

// Largest width <= the formula width whose shell-volume bound
// 8 pi w sinh^2(asinh R + w) stays below budget.
double choose_delta_3d(double R, double budget);

// |integral of K dA over the disk of radius r0 + k L - 2 pi|.
double gauss_bonnet_check(const WarpedMetric& metric, double r0);

}  // namespace islands
