#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "islands/conformal_chart.hpp"
#include "islands/multicurve.hpp"

namespace islands {

// Lengths use the closed-form integral of the ambient factor along chords and
// 16-point Gauss-Legendre inside islands. Areas use Green's theorem with the
// radial area primitive, so they are exact for the polygon up to quadrature
// of the island correction.
double polygon_length(const ConformalChart& chart, const Polygon& polygon);
double polygon_area(const ConformalChart& chart, const Polygon& polygon);

// Both throw GeometryError on self-intersection.
double curve_length(const ConformalChart& chart, const MultiCurve& curve);
double enclosed_area(const ConformalChart& chart, const MultiCurve& curve);

struct CurveGradients {
  // Per vertex, as (d/dx, d/dy) packed into a complex number.
  std::vector<std::vector<Point>> length;
  std::vector<std::vector<Point>> area;
};

CurveGradients curve_gradients(const ConformalChart& chart, const MultiCurve& curve);

// Discrete geodesic curvature at each vertex: the ratio of the length and
// area first variations along the vertex normal.
std::vector<std::vector<double>> vertex_curvatures(const ConformalChart& chart, const MultiCurve& curve);

struct FlowParams {
  double area_rel_tol = 1e-6;
  double correction_rel_tol = 1e-11;
  double length_slack = 1e-12;
  std::size_t max_iterations = 20000;
  std::size_t redistribute_every = 50;
  std::size_t window = 100;
  double convergence_rel = 1e-10;
  double initial_step = 1.0;
  double min_step = 1e-12;
  double pinch_factor = 0.25;
  double init_area_tol = 0.2;  // allowed relative mismatch of the initial area
};

enum class FlowStatus { running, converged, max_iterations, stagnated, topology_event };

std::string_view to_string(FlowStatus status);

struct FlowState {
  MultiCurve curve;
  double area_target = 0.0;
  double step = 1.0;
  double length = 0.0;
  double area = 0.0;
  double kg_spread = 0.0;  // max over components of max |k_i - mean k|
  std::vector<double> kg_mean;
  std::size_t iteration = 0;
  std::size_t accepted = 0;
};

struct TraceRow {
  std::size_t iteration = 0;
  double length = 0.0;
  double area = 0.0;
  double kg_spread = 0.0;
};

// Projects the initial curve onto the area constraint. Throws ParameterError
// when the initial area is off by more than params.init_area_tol.
FlowState make_flow_state(const ConformalChart& chart, MultiCurve init, double area_target,
                          const FlowParams& params = {});

struct StepReport {
  bool accepted = false;
  FlowStatus status = FlowStatus::running;
  std::string event;
};

StepReport flow_step(const ConformalChart& chart, FlowState& state, const FlowParams& params = {});

struct FlowResult {
  FlowState state;
  std::vector<TraceRow> trace;
  FlowStatus status = FlowStatus::running;
  std::string event;
  double max_area_deviation = 0.0;  // relative, over accepted steps
  double max_length_increase = 0.0;  // relative, over accepted steps
  double kg_relative_spread = 0.0;   // max over components of spread / |mean|
};

FlowResult run_flow(const ConformalChart& chart, MultiCurve init, double area_target,
                    const FlowParams& params = {});

struct ComponentConvexity {
  std::size_t component = 0;
  double min_curvature = 0.0;
  double max_curvature = 0.0;
  std::size_t nonpositive = 0;  // vertices with k <= 0
  bool sign_change = false;
};

std::vector<ComponentConvexity> convexity_diagnostic(const ConformalChart& chart, const MultiCurve& curve);

}  // namespace islands
