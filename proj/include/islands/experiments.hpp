#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "islands/curve_flow.hpp"

namespace islands {

enum class InitKind { seeded, circle, two_island, island_circle, tube, mid_circle };

std::string_view to_string(InitKind kind);
InitKind init_from_string(std::string_view name);  // throws ParameterError
ChartKind chart_from_string(std::string_view name);

struct FlowSpec {
  ChartKind chart = ChartKind::hyperbolic_disk;
  double R = 5.0;
  double d = 32.0;
  InitKind init = InitKind::seeded;
  double target = 10.0;
  std::uint64_t seed = 1;
  std::size_t vertices = 0;  // per component; 0 picks the default for the init
  double neck = 0.3;         // tube half-width
  FlowParams params;
};

ConformalChart make_chart(const FlowSpec& spec);
MultiCurve make_init(const ConformalChart& chart, const FlowSpec& spec);

struct FlowRun {
  FlowSpec spec;
  FlowResult result;
  std::optional<double> oracle;  // closed-form length on the hyperbolic charts
  std::optional<double> oracle_error;
};

FlowRun run_flow_spec(const FlowSpec& spec);

// Island radius whose distance circle in the island metric encloses area.
double island_radius_for_area(const IslandRadialMap& map, double area);

// Two-component versus single-component competitors on TwinIsland(R, d).
struct DeskSuite {
  double R = 5.0, d = 32.0, target = 157.0;
  double reference = 0.0;  // 2 * 2 pi sqrt(target / 2 pi), two flat disks
  std::vector<FlowRun> two_component;
  std::vector<FlowRun> single_component;
  double best_two = 0.0;
  double best_single = 0.0;
  bool two_within_tolerance = false;  // every two-component run within 1% of reference
  bool advantage = false;  // each single run is longer or ended in a topology event
};

// light runs one two-component seed and the island-circle competitor only.
DeskSuite desk_suite(const std::vector<std::uint64_t>& seeds, bool light = false);

}  // namespace islands
