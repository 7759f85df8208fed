#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "islands/conformal_chart.hpp"

namespace islands {

using Polygon = std::vector<Point>;

// Closed polygons, positively oriented, vertices in chart coordinates.
struct MultiCurve {
  std::vector<Polygon> components;

  std::size_t vertex_count() const;
};

inline constexpr std::size_t kMinVertices = 16;

struct SegmentRef {
  std::size_t component = 0;
  std::size_t segment = 0;  // edge from vertex i to i + 1
};

struct SegmentContact {
  SegmentRef a, b;
  double distance = 0.0;
};

// First pair of non-adjacent segments that cross, if any.
std::optional<SegmentContact> find_intersection(const MultiCurve& curve);

// Non-neighbouring segments (more than min_gap edges apart along a component,
// or on different components) closer than factor * the shorter of the two.
std::optional<SegmentContact> find_close_approach(const MultiCurve& curve, double factor = 0.25,
                                                  std::size_t min_gap = 3);

// Throws GeometryError unless every component has at least kMinVertices
// vertices, positive orientation, and the curve is free of crossings.
void validate(const MultiCurve& curve);

// Euclidean shoelace area of a polygon in chart coordinates.
double chart_signed_area(const Polygon& polygon);

double segment_distance(Point a0, Point a1, Point b0, Point b1);

// Uniform doubles in [0, 1) from a 64-bit seed, identical on every platform
// (std::uniform_real_distribution is not).
class UniformStream {
 public:
  explicit UniformStream(std::uint64_t seed) : engine_(seed) {}
  double next() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Initial curves.
Polygon geodesic_circle(const ConformalChart& chart, Point center, double radius, std::size_t n);
Polygon island_circle(const ConformalChart& chart, std::size_t island, double island_radius,
                      std::size_t n, double aspect = 1.0, double rotation = 0.0);
// Oval about the origin of the disk chart, r(theta) = s (1 + a cos 2(theta - theta0))
// in geodesic polar coordinates; the seed picks a in [0.15, 0.35], theta0 and the
// vertex phase, and s is solved so the enclosed area equals target_area.
Polygon seeded_ellipse(const ConformalChart& chart, double target_area, std::uint64_t seed, std::size_t n);
// Island-centred ellipse of the given island radius; the seed picks the
// aspect ratio in [1, max_aspect] and the orientation.
Polygon seeded_island_curve(const ConformalChart& chart, std::size_t island, double island_radius,
                            std::uint64_t seed, std::size_t n, double max_aspect = 1.15);
// Two island disks joined along the geodesic between the centres by a band
// of half-width neck; bulb size chosen to hit target_area.
Polygon twin_tube(const ConformalChart& chart, double target_area, double neck, std::size_t n);
// Non-convex peanut near the origin of a disk chart.
Polygon dumbbell(std::size_t n);

}  // namespace islands
