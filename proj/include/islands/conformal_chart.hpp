#pragma once

#include <complex>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "islands/radial_profile.hpp"

namespace islands {

using Point = std::complex<double>;

// Radial data of one island in its own Poincare-disk coordinate w, |w| = rho.
// Inside rho_out the island metric is lambda_isl(rho)|dw|; outside it is the
// hyperbolic factor 2 / (1 - rho^2).
class IslandRadialMap {
 public:
  explicit IslandRadialMap(RadialProfile profile);

  const RadialProfile& profile() const { return profile_; }
  double rho_in() const { return rho_in_; }
  double rho_out() const { return rho_out_; }
  double flat_factor() const { return flat_factor_; }  // lambda_isl on the flat disk

  // Island radius r -> rho, and the inverse.
  double rho_of_r(double r) const;
  double r_of_rho(double rho) const;

  struct Ratio {
    double mu = 1.0;             // lambda_isl / lambda_hyperbolic
    double dmu_over_rho = 0.0;   // mu'(rho) / rho
  };
  Ratio ratio(double rho) const;

  double lambda(double rho) const;  // lambda_isl(rho)

  // (F(rho) - F_hyp(rho)) / rho^2 with F the enclosed area over 2 pi; valid
  // for rho <= rho_out.
  double area_kernel(double rho) const;
  // F(rho_out) - F_hyp(rho_out): the area excess of the whole island over 2 pi.
  double area_excess() const { return area_excess_; }

 private:
  // Band coordinate s for rho in [rho_in, rho_out].
  double band_s(double rho) const;
  double island_area_over_2pi(double s) const;

  RadialProfile profile_;
  double rho_in_ = 0.0, rho_out_ = 0.0, log_ratio_ = 0.0;
  double flat_factor_ = 0.0;
  double area_excess_ = 0.0;
  struct Table;
  std::shared_ptr<const Table> table_;
};

enum class ChartKind { hyperbolic_disk, hyperbolic_half_plane, single_island, twin_island };

std::string_view to_string(ChartKind kind);

struct Factor {
  double lambda = 0.0;
  Point grad;  // (d lambda / dx, d lambda / dy)
};

struct IslandPoint {
  Point w;
  Point dw;  // dw/dz
};

class ConformalChart {
 public:
  static ConformalChart hyperbolic();
  static ConformalChart hyperbolic_half_plane();
  static ConformalChart single_island(double R);
  // d is the hyperbolic gap between the two modified islands.
  static ConformalChart twin_island(double R, double d);

  ChartKind kind() const { return kind_; }
  bool half_plane() const { return half_plane_; }
  bool in_domain(Point z) const;

  double ambient_factor(Point z) const;
  Point ambient_gradient(Point z) const;
  Factor factor(Point z) const;

  std::size_t island_count() const { return centers_.size(); }
  Point island_center(std::size_t k) const { return centers_.at(k); }
  const IslandRadialMap& radial() const;
  IslandPoint to_island(std::size_t k, Point z) const;
  Point from_island(std::size_t k, Point w) const;

  // Hyperbolic distance in the ambient (island-free) metric.
  double ambient_distance(Point a, Point b) const;
  double center_distance() const { return center_distance_; }

 private:
  ChartKind kind_ = ChartKind::hyperbolic_disk;
  bool half_plane_ = false;
  std::vector<Point> centers_;
  std::optional<IslandRadialMap> radial_;
  double center_distance_ = 0.0;
};

}  // namespace islands
