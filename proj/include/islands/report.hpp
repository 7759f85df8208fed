#pragma once

#include <cstddef>
#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace islands {

inline constexpr std::string_view kArtifactName = "islands";
inline constexpr std::string_view kArtifactVersion = "1.0.0";

using Json = nlohmann::ordered_json;

// Parameters shared by every subcommand. Unset optionals are filled by
// resolve() with per-command defaults.
struct RunConfig {
  std::string command;
  int dim = 2;
  std::optional<double> R, d, target;
  std::optional<double> epsilon;
  double epsilon_max = 0.5;
  std::optional<double> delta_override;
  std::optional<double> collar_budget;
  std::uint64_t seed = 1;
  std::string out = ".";
  std::string format = "json";
  std::string chart = "hyperbolic";
  std::string init;     // empty picks the chart's default
  std::size_t vertices = 0;
  std::string control;  // curvature only: euclidean | hyperbolic | spherical
  std::size_t max_iterations = 20000;
  bool light = false;
};

RunConfig resolve(RunConfig config);
Json config_json(const RunConfig& config);

enum class Relation { approx, at_least, below };

std::string_view to_string(Relation relation);

// One stated constant against its recomputation. ok is false whenever the
// computed value breaks the stated relation (or misses it by more than the
// tolerance for approx rows); such rows are reported as discrepancies.
struct PaperRow {
  std::string id;
  std::string quantity;
  Relation relation = Relation::approx;
  double stated = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;  // absolute; approx rows only
  std::string provenance;
  std::string note;
  bool ok = false;

  double deviation() const;
};

std::vector<PaperRow> paper_table();

// A named verification with a canonical (timing-free) detail record.
struct CheckResult {
  std::string name;
  bool passed = false;
  Json detail;
};

CheckResult check_paper_table();
CheckResult check_curvature(std::size_t samples = 10000);
CheckResult check_annulus();
CheckResult check_ledger();
CheckResult check_gauss_bonnet();
CheckResult check_round_trips();
CheckResult check_hyperbolic_flows(bool light = false);
CheckResult check_desk_suite(bool light = false);

std::vector<CheckResult> verify_all(bool light);

// Subcommands. Each writes its files under config.out and returns the exit
// code: 0 success, 2 a check failed. Errors propagate as exceptions.
int cmd_profile(const RunConfig& config);
int cmd_curvature(const RunConfig& config);
int cmd_ledger(const RunConfig& config);
int cmd_flow(const RunConfig& config);
int cmd_paper_table(const RunConfig& config);
int cmd_verify_all(const RunConfig& config);

int run_command(const RunConfig& config);

// Canonical text forms used by every report.
std::string format_number(double value);
std::string dump_json(const Json& doc);

}  // namespace islands
