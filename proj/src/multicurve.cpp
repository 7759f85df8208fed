#include "islands/multicurve.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <numeric>

#include "islands/curve_flow.hpp"
#include "islands/errors.hpp"
#include "islands/numeric.hpp"

namespace islands {

using numeric::pi;

std::size_t MultiCurve::vertex_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.size();
  return n;
}

double chart_signed_area(const Polygon& polygon) {
  double acc = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = polygon[i], b = polygon[(i + 1) % n];
    acc += a.real() * b.imag() - a.imag() * b.real();
  }
  return 0.5 * acc;
}

namespace {

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }

double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = std::norm(ab);
  double t = len2 > 0.0 ? ((p - a).real() * ab.real() + (p - a).imag() * ab.imag()) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * ab));
}

bool segments_cross(Point a0, Point a1, Point b0, Point b1) {
  const double d1 = cross(a1 - a0, b0 - a0);
  const double d2 = cross(a1 - a0, b1 - a0);
  const double d3 = cross(b1 - b0, a0 - b0);
  const double d4 = cross(b1 - b0, a1 - b0);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
  auto on = [](Point p, Point q, Point r) {  // r on segment pq, given collinear
    return std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
           std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
  };
  if (d1 == 0 && on(a0, a1, b0)) return true;
  if (d2 == 0 && on(a0, a1, b1)) return true;
  if (d3 == 0 && on(b0, b1, a0)) return true;
  if (d4 == 0 && on(b0, b1, a1)) return true;
  return false;
}

struct Box {
  double xmin, xmax, ymin, ymax;
  SegmentRef ref;
  Point a, b;
};

std::vector<Box> segment_boxes(const MultiCurve& curve, double pad_factor) {
  std::vector<Box> boxes;
  boxes.reserve(curve.vertex_count());
  for (std::size_t c = 0; c < curve.components.size(); ++c) {
    const auto& poly = curve.components[c];
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = poly[i], b = poly[(i + 1) % n];
      const double pad = pad_factor * std::abs(b - a);
      boxes.push_back({std::min(a.real(), b.real()) - pad, std::max(a.real(), b.real()) + pad,
                       std::min(a.imag(), b.imag()) - pad, std::max(a.imag(), b.imag()) + pad, {c, i}, a, b});
    }
  }
  std::sort(boxes.begin(), boxes.end(), [](const Box& l, const Box& r) { return l.xmin < r.xmin; });
  return boxes;
}

std::size_t cyclic_gap(std::size_t i, std::size_t j, std::size_t n) {
  const std::size_t d = i > j ? i - j : j - i;
  return std::min(d, n - d);
}

// Visits pairs of boxes whose extents overlap; stops when visit returns true.
template <class Visit>
bool sweep(const std::vector<Box>& boxes, Visit visit) {
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size() && boxes[j].xmin <= boxes[i].xmax; ++j) {
      if (boxes[j].ymin > boxes[i].ymax || boxes[j].ymax < boxes[i].ymin) continue;
      if (visit(boxes[i], boxes[j])) return true;
    }
  }
  return false;
}

}  // namespace

double segment_distance(Point a0, Point a1, Point b0, Point b1) {
  if (segments_cross(a0, a1, b0, b1)) return 0.0;
  return std::min({point_segment_distance(a0, b0, b1), point_segment_distance(a1, b0, b1),
                   point_segment_distance(b0, a0, a1), point_segment_distance(b1, a0, a1)});
}

std::optional<SegmentContact> find_intersection(const MultiCurve& curve) {
  const auto boxes = segment_boxes(curve, 0.0);
  std::optional<SegmentContact> found;
  sweep(boxes, [&](const Box& p, const Box& q) {
    if (p.ref.component == q.ref.component) {
      const std::size_t n = curve.components[p.ref.component].size();
      if (cyclic_gap(p.ref.segment, q.ref.segment, n) <= 1) return false;
    }
    if (segments_cross(p.a, p.b, q.a, q.b)) {
      found = SegmentContact{p.ref, q.ref, 0.0};
      return true;
    }
    return false;
  });
  return found;
}

std::optional<SegmentContact> find_close_approach(const MultiCurve& curve, double factor, std::size_t min_gap) {
  const auto boxes = segment_boxes(curve, factor);
  std::optional<SegmentContact> found;
  sweep(boxes, [&](const Box& p, const Box& q) {
    if (p.ref.component == q.ref.component) {
      const std::size_t n = curve.components[p.ref.component].size();
      if (cyclic_gap(p.ref.segment, q.ref.segment, n) <= min_gap) return false;
    }
    const double limit = factor * std::min(std::abs(p.b - p.a), std::abs(q.b - q.a));
    const double dist = segment_distance(p.a, p.b, q.a, q.b);
    if (dist < limit) {
      found = SegmentContact{p.ref, q.ref, dist};
      return true;
    }
    return false;
  });
  return found;
}

void validate(const MultiCurve& curve) {
  if (curve.components.empty()) throw GeometryError("curve has no components");
  for (std::size_t c = 0; c < curve.components.size(); ++c) {
    const auto& poly = curve.components[c];
    if (poly.size() < kMinVertices) {
      throw GeometryError(fmt::format("component {} has {} vertices; at least {} are required", c, poly.size(),
                                      kMinVertices));
    }
    if (!(chart_signed_area(poly) > 0.0)) {
      throw GeometryError(fmt::format("component {} is not positively oriented", c));
    }
  }
  if (const auto hit = find_intersection(curve)) {
    throw GeometryError(fmt::format("segments {}:{} and {}:{} intersect", hit->a.component, hit->a.segment,
                                    hit->b.component, hit->b.segment));
  }
}

Polygon geodesic_circle(const ConformalChart& chart, Point center, double radius, std::size_t n) {
  if (!(radius > 0.0)) throw DomainError("circle radius must be positive");
  Polygon poly(n);
  if (chart.half_plane()) {
    // Euclidean circle centred at x + i y cosh t with radius y sinh t.
    const double y = center.imag();
    const Point c(center.real(), y * std::cosh(radius));
    const double e = y * std::sinh(radius);
    for (std::size_t i = 0; i < n; ++i) poly[i] = c + std::polar(e, 2.0 * pi * i / n);
    return poly;
  }
  const double rho = std::tanh(0.5 * radius);
  for (std::size_t i = 0; i < n; ++i) {
    const Point w = std::polar(rho, 2.0 * pi * i / n);
    poly[i] = (w + center) / (1.0 + std::conj(center) * w);
  }
  return poly;
}

Polygon island_circle(const ConformalChart& chart, std::size_t island, double island_radius, std::size_t n,
                      double aspect, double rotation) {
  const double rho = chart.radial().rho_of_r(island_radius);
  const double a = std::sqrt(aspect);
  Polygon poly(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * pi * i / n;
    const Point w = rho * Point(a * std::cos(th), std::sin(th) / a) * std::polar(1.0, rotation);
    poly[i] = chart.from_island(island, w);
  }
  return poly;
}

Polygon seeded_ellipse(const ConformalChart& chart, double target_area, std::uint64_t seed, std::size_t n) {
  if (chart.half_plane()) throw DomainError("seeded_ellipse needs a disk chart");
  UniformStream rng(seed);
  const double stretch = 0.15 + 0.2 * rng.next();
  const double rotation = pi * rng.next();
  const double phase = 2.0 * pi * rng.next();
  auto shape = [&](double scale) {
    Polygon poly(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double th = phase + 2.0 * pi * static_cast<double>(i) / static_cast<double>(n);
      const double r = scale * (1.0 + stretch * std::cos(2.0 * (th - rotation)));
      poly[i] = std::polar(std::tanh(0.5 * r), th);
    }
    return poly;
  };
  double lo = 0.0, hi = 1.0;
  while (polygon_area(chart, shape(hi)) < target_area) {
    lo = hi;
    hi *= 2.0;
    if (hi > 20.0) throw DomainError("target area too large for the ellipse init");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (polygon_area(chart, shape(mid)) < target_area ? lo : hi) = mid;
  }
  return shape(0.5 * (lo + hi));
}

Polygon seeded_island_curve(const ConformalChart& chart, std::size_t island, double island_radius,
                            std::uint64_t seed, std::size_t n, double max_aspect) {
  UniformStream rng(seed + 0x9e3779b97f4a7c15ULL * (island + 1));
  const double aspect = 1.0 + (max_aspect - 1.0) * rng.next();
  const double rotation = pi * rng.next();
  return island_circle(chart, island, island_radius, n, aspect, rotation);
}

Polygon twin_tube(const ConformalChart& chart, double target_area, double neck, std::size_t n) {
  if (chart.kind() != ChartKind::twin_island) throw DomainError("twin_tube needs the twin-island chart");
  const double half = 0.5 * chart.center_distance();
  const double sigma_lo = -half, sigma_hi = half;
  auto fermi = [](double sigma, double nu) {
    return std::exp(sigma) * Point(std::tanh(nu), 1.0 / std::cosh(nu));
  };

  auto build = [&](double rho_b) {
    const double t_b = 2.0 * std::atanh(rho_b);
    if (!(neck < t_b)) throw DomainError("tube neck must be narrower than the bulbs");
    const double shift = std::acosh(std::cosh(t_b) / std::cosh(neck));
    const double s0 = sigma_lo + shift, s1 = sigma_hi - shift;
    const double side_len = (s1 - s0) * std::cosh(neck);
    const double bulb_len = 2.0 * pi * std::sinh(t_b);
    const double total = 2.0 * side_len + 2.0 * bulb_len;
    const std::size_t n_side = std::max<std::size_t>(4, static_cast<std::size_t>(std::round(n * side_len / total)));
    const std::size_t n_bulb = std::max<std::size_t>(8, (n - 2 * n_side) / 2);

    Polygon poly;
    auto arc = [&](std::size_t island, Point from, Point to) {
      const Point wf = chart.to_island(island, from).w;
      const Point wt = chart.to_island(island, to).w;
      const double a0 = std::arg(wf);
      double a1 = std::arg(wt);
      while (a1 <= a0) a1 += 2.0 * pi;
      for (std::size_t i = 0; i < n_bulb; ++i) {
        const double th = a0 + (a1 - a0) * static_cast<double>(i) / n_bulb;
        poly.push_back(chart.from_island(island, std::polar(rho_b, th)));
      }
    };
    auto side = [&](double nu, double from, double to) {
      for (std::size_t i = 0; i < n_side; ++i) {
        poly.push_back(fermi(from + (to - from) * static_cast<double>(i) / n_side, nu));
      }
    };
    side(neck, s0, s1);                                    // right side, upward
    arc(1, fermi(s1, neck), fermi(s1, -neck));             // upper bulb over the top
    side(-neck, s1, s0);                                   // left side, downward
    arc(0, fermi(s0, -neck), fermi(s0, neck));             // lower bulb under the bottom
    return poly;
  };

  const auto& radial = chart.radial();
  double lo = std::tanh(0.5 * neck) * 1.01, hi = radial.rho_in() * (1.0 - 1e-9);
  if (polygon_area(chart, build(hi)) < target_area) throw DomainError("tube cannot reach the target area");
  if (polygon_area(chart, build(lo)) > target_area) throw DomainError("tube neck too wide for the target area");
  for (int it = 0; it < 100 && hi - lo > 1e-14; ++it) {
    const double mid = 0.5 * (lo + hi);
    (polygon_area(chart, build(mid)) < target_area ? lo : hi) = mid;
  }
  return build(0.5 * (lo + hi));
}

Polygon dumbbell(std::size_t n) {
  Polygon poly(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double th = 2.0 * pi * i / n;
    const double r = 0.3 * (1.0 + 0.6 * std::cos(2.0 * th));
    poly[i] = std::polar(r, th);
  }
  return poly;
}

}  // namespace islands
