#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "islands/radial_profile.hpp"

namespace islands {

struct IslandConfig {
  int dim = 2;
  double R = 100.0;
  double d = 1000.0;       // gap between the two modified islands
  double target = 62830.0;  // area (dim 2) or volume (dim 3)
  std::optional<double> collar_budget;

  // 1/R in dim 2, 0.01 in dim 3 unless set.
  double budget() const;
  void validate() const;
};

struct PackingParams {
  double epsilon = 0.5;
  double epsilon_max = 0.5;

  void validate() const;  // throws ParameterError unless 0 < epsilon <= epsilon_max
};

enum class CaseKind { disconnected, avoiding_both, meets_one, meets_both };

std::string_view to_string(CaseKind kind);

struct Candidate {
  CaseKind kind = CaseKind::disconnected;
  double boundary = 0.0;  // exact for disconnected, a lower bound otherwise
  std::string variant;    // which formula produced the value
  std::string citation;
};

// The island metric used by the ledger: the formula band in dim 2, the band
// narrowed by choose_delta_3d in dim 3.
RadialProfile island_profile(const IslandConfig& config);

// Flat measure of one island plus its collar budget.
double island_capacity(const IslandConfig& config);

struct DisconnectedResult {
  Candidate candidate;
  double per_island_radius = 0.0;
  double flat_radius = 0.0;  // R - width
};

DisconnectedResult disconnected_boundary(const IslandConfig& config);

// Total boundary when the islands hold fractions f and 1 - f of the target.
// Throws InfeasibleError when either part exceeds the island capacity.
double split_boundary(const IslandConfig& config, double fraction);

Candidate bound_avoiding_both(const IslandConfig& config);

struct MeetsOneResult {
  Candidate exact;  // used by the verdict
  Candidate paper;  // target / 3 outside the island
  double outside_exact = 0.0;
  double outside_paper = 0.0;
};

MeetsOneResult bound_meets_one(const IslandConfig& config);

struct MeetsBothResult {
  Candidate used;                  // dim 2: 2d; dim 3: printed threshold form
  std::optional<Candidate> model;  // dim 3 only: ball-count model
  double balls = 0.0;              // floor(d / (4 eps)) in dim 3
  double per_ball = 0.0;           // 2 pi (cosh eps - 1)
};

MeetsBothResult bound_meets_both(const IslandConfig& config,
                                 const std::optional<PackingParams>& packing);

struct SeparationThreshold {
  double target_area = 0.0;
  double paper = 0.0;  // T 4 eps / (pi (cosh eps - 1))
  double model = 0.0;  // 4 eps ceil(T / (2 pi (cosh eps - 1)))
};

SeparationThreshold min_separation_3d(const IslandConfig& config, const PackingParams& packing,
                                      std::optional<double> target_area = std::nullopt);

// Epsilon in (0, epsilon_max] maximizing the dim-3 meets-both bound at the
// configured d.
double best_epsilon(const IslandConfig& config, double epsilon_max);

struct CaseRecord {
  Candidate candidate;
  double margin = 0.0;  // bound - disconnected boundary
};

struct Verdict {
  IslandConfig config;
  std::optional<PackingParams> packing;
  double width = 0.0;
  DisconnectedResult disconnected;
  std::vector<CaseRecord> cases;  // avoiding_both, meets_one, meets_both
  std::vector<Candidate> reported;  // variants shown but not used
  std::optional<SeparationThreshold> threshold;
  double min_connected_bound = 0.0;
  CaseKind weakest_case = CaseKind::avoiding_both;
  double margin = 0.0;
  bool certified = false;
  std::vector<std::string> failing_cases;
  std::vector<std::string> notes;
};

Verdict verdict(const IslandConfig& config, const std::optional<PackingParams>& packing);

}  // namespace islands
