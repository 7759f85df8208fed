#include "islands/conformal_chart.hpp"

#include <algorithm>
#include <cmath>

using std::isnan;  // the pchip header calls it unqualified

#include <boost/math/interpolators/pchip.hpp>
#include <fmt/format.h>

#include "islands/errors.hpp"
#include "islands/numeric.hpp"

namespace islands {

struct IslandRadialMap::Table {
  boost::math::interpolators::pchip<std::vector<double>> s_of_level;
};

namespace {

constexpr int kTablePoints = 2001;

// 2 rho^2 / (1 - rho^2): hyperbolic disk area over 2 pi.
double hyperbolic_area_over_2pi(double rho) { return 2.0 * rho * rho / ((1.0 - rho) * (1.0 + rho)); }

}  // namespace

IslandRadialMap::IslandRadialMap(RadialProfile profile) : profile_(std::move(profile)) {
  const double R = profile_.R();
  const double w = profile_.width();
  const auto& band = profile_.band();
  auto inv_h = [&](double s) { return 1.0 / (R + w * band.eval(s).q); };

  rho_out_ = std::tanh(0.5 * profile_.hyperbolic_start());
  log_ratio_ = w * numeric::gauss8(inv_h, -1.0, 1.0);
  rho_in_ = rho_out_ * std::exp(-log_ratio_);
  flat_factor_ = (R - w) / rho_in_;
  area_excess_ = island_area_over_2pi(1.0) - hyperbolic_area_over_2pi(rho_out_);

  if (profile_.band_resolvable() && rho_in_ < rho_out_) {
    std::vector<double> level(kTablePoints), s(kTablePoints);
    double acc = 0.0;
    s[0] = -1.0;
    level[0] = 0.0;
    for (int i = 1; i < kTablePoints; ++i) {
      s[i] = -1.0 + 2.0 * i / (kTablePoints - 1);
      acc += numeric::gauss8(inv_h, s[i - 1], s[i]);
      level[i] = acc;
    }
    for (auto& v : level) v /= acc;
    level.back() = 1.0;
    table_ = std::make_shared<const Table>(
        Table{boost::math::interpolators::pchip<std::vector<double>>(std::move(level), std::move(s))});
  }
}

double IslandRadialMap::island_area_over_2pi(double s) const {
  const double R = profile_.R();
  const double w = profile_.width();
  const auto& band = profile_.band();
  const double integral = numeric::gauss8([&](double t) { return R + w * band.eval(t).q; }, -1.0, s);
  return 0.5 * (R - w) * (R - w) + w * integral;
}

double IslandRadialMap::band_s(double rho) const {
  double level = log_ratio_ > 0.0 ? std::log(rho / rho_in_) / log_ratio_ : 0.5;
  level = std::clamp(level, 0.0, 1.0);
  if (!table_) return 2.0 * level - 1.0;
  return std::clamp(table_->s_of_level(level), -1.0, 1.0);
}

double IslandRadialMap::rho_of_r(double r) const {
  if (r < 0.0) throw DomainError(fmt::format("island radius must be non-negative, got {}", r));
  const double R = profile_.R();
  const double w = profile_.width();
  switch (profile_.piece_at(r)) {
    case Piece::flat:
      return rho_in_ * r / (R - w);
    case Piece::hyperbolic:
      return std::tanh(0.5 * ((r - R) + profile_.asinh_R()));
    case Piece::band: {
      const double s = (r - R) / w;
      const auto& band = profile_.band();
      const double part = w * numeric::gauss8([&](double t) { return 1.0 / (R + w * band.eval(t).q); }, -1.0, s);
      return rho_in_ * std::exp(part);
    }
  }
  return 0.0;
}

double IslandRadialMap::r_of_rho(double rho) const {
  if (!(rho >= 0.0 && rho < 1.0)) throw DomainError(fmt::format("rho must lie in [0, 1), got {}", rho));
  const double R = profile_.R();
  const double w = profile_.width();
  if (rho <= rho_in_) return (R - w) * rho / rho_in_;
  if (rho >= rho_out_) return 2.0 * std::atanh(rho) - profile_.asinh_R() + R;
  return R + w * band_s(rho);
}

double IslandRadialMap::lambda(double rho) const {
  if (rho <= rho_in_) return flat_factor_;
  if (rho >= rho_out_) return 2.0 / ((1.0 - rho) * (1.0 + rho));
  return profile_.eval_band(band_s(rho)).h / rho;
}

IslandRadialMap::Ratio IslandRadialMap::ratio(double rho) const {
  Ratio out;
  if (rho >= rho_out_) return out;
  const double one_minus = (1.0 - rho) * (1.0 + rho);
  if (rho <= rho_in_) {
    out.mu = 0.5 * flat_factor_ * one_minus;
    out.dmu_over_rho = -flat_factor_;
    return out;
  }
  const auto b = profile_.eval_band(band_s(rho));
  const double lam = b.h / rho;
  const double dlam_over_rho = lam * (b.dh - 1.0) / (rho * rho);
  out.mu = 0.5 * lam * one_minus;
  out.dmu_over_rho = 0.5 * dlam_over_rho * one_minus - lam;
  return out;
}

double IslandRadialMap::area_kernel(double rho) const {
  if (rho >= rho_out_) return area_excess_ / (rho * rho);
  const double hyp = 2.0 / ((1.0 - rho) * (1.0 + rho));
  if (rho <= rho_in_) return 0.5 * flat_factor_ * flat_factor_ - hyp;
  const double F = island_area_over_2pi(band_s(rho));
  return F / (rho * rho) - hyp;
}

std::string_view to_string(ChartKind kind) {
  switch (kind) {
    case ChartKind::hyperbolic_disk:
      return "hyperbolic";
    case ChartKind::hyperbolic_half_plane:
      return "hyperbolic-half-plane";
    case ChartKind::single_island:
      return "single-island";
    case ChartKind::twin_island:
      return "twin-island";
  }
  return "?";
}

ConformalChart ConformalChart::hyperbolic() { return ConformalChart{}; }

ConformalChart ConformalChart::hyperbolic_half_plane() {
  ConformalChart c;
  c.kind_ = ChartKind::hyperbolic_half_plane;
  c.half_plane_ = true;
  return c;
}

ConformalChart ConformalChart::single_island(double R) {
  ConformalChart c;
  c.kind_ = ChartKind::single_island;
  c.radial_.emplace(make_profile(R));
  c.centers_ = {Point(0.0, 0.0)};
  return c;
}

ConformalChart ConformalChart::twin_island(double R, double d) {
  if (!(d > 0.0)) throw DomainError(fmt::format("island gap must be positive, got {}", d));
  ConformalChart c;
  c.kind_ = ChartKind::twin_island;
  c.half_plane_ = true;
  c.radial_.emplace(make_profile(R));
  c.center_distance_ = d + 2.0 * c.radial_->profile().hyperbolic_start();
  const double half = 0.5 * c.center_distance_;
  c.centers_ = {Point(0.0, std::exp(-half)), Point(0.0, std::exp(half))};
  return c;
}

const IslandRadialMap& ConformalChart::radial() const {
  if (!radial_) throw DomainError("chart has no islands");
  return *radial_;
}

bool ConformalChart::in_domain(Point z) const {
  if (half_plane_) return z.imag() > 0.0 && std::isfinite(z.real()) && std::isfinite(z.imag());
  return std::abs(z) < 1.0;
}

double ConformalChart::ambient_factor(Point z) const {
  if (half_plane_) return 1.0 / z.imag();
  const double r = std::abs(z);
  return 2.0 / ((1.0 - r) * (1.0 + r));
}

Point ConformalChart::ambient_gradient(Point z) const {
  if (half_plane_) return Point(0.0, -1.0 / (z.imag() * z.imag()));
  const double lam = ambient_factor(z);
  return lam * lam * z;
}

IslandPoint ConformalChart::to_island(std::size_t k, Point z) const {
  const Point p = centers_.at(k);
  IslandPoint out;
  if (half_plane_) {
    const Point denom = z - std::conj(p);
    out.w = (z - p) / denom;
    out.dw = (p - std::conj(p)) / (denom * denom);
  } else {
    const Point denom = 1.0 - std::conj(p) * z;
    out.w = (z - p) / denom;
    out.dw = (1.0 - std::norm(p)) / (denom * denom);
  }
  return out;
}

Point ConformalChart::from_island(std::size_t k, Point w) const {
  const Point p = centers_.at(k);
  if (half_plane_) return (p - std::conj(p) * w) / (1.0 - w);
  return (w + p) / (1.0 + std::conj(p) * w);
}

Factor ConformalChart::factor(Point z) const {
  if (!in_domain(z)) {
    throw DomainError(fmt::format("point ({}, {}) lies outside the {} chart", z.real(), z.imag(), to_string(kind_)));
  }
  Factor f;
  f.lambda = ambient_factor(z);
  f.grad = ambient_gradient(z);
  for (std::size_t k = 0; k < centers_.size(); ++k) {
    const auto ip = to_island(k, z);
    const double rho = std::abs(ip.w);
    if (rho >= radial_->rho_out()) continue;
    const auto r = radial_->ratio(rho);
    const Point wdw = std::conj(ip.w) * ip.dw;
    const Point grad_rho_scaled(wdw.real(), -wdw.imag());  // rho * grad(rho)
    f.grad = f.grad * r.mu + f.lambda * r.dmu_over_rho * grad_rho_scaled;
    f.lambda *= r.mu;
    break;
  }
  return f;
}

double ConformalChart::ambient_distance(Point a, Point b) const {
  if (half_plane_) {
    return 2.0 * std::asinh(std::abs(a - b) / (2.0 * std::sqrt(a.imag() * b.imag())));
  }
  return 2.0 * std::atanh(std::abs(a - b) / std::abs(1.0 - std::conj(a) * b));
}

}  // namespace islands
