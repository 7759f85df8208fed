#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <functional>
#include <iterator>
#include <string>
#include <vector>

#include "islands/experiments.hpp"
#include "islands/report.hpp"

using namespace islands;

namespace {

struct Outcome {
  bool passed = false;
  std::string summary;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string read_bytes(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome paper_constants() {
  const auto start = Clock::now();
  const auto check = check_paper_table();
  const double t = seconds_since(start);
  std::string flagged;
  for (const auto& row : check.detail["rows"]) {
    if (row["flag"] == "discrepancy") flagged += fmt::format(" {}", row["id"].get<std::string>());
  }
  return {check.passed && t < 1.0,
          fmt::format("{} rows, flagged:{}, unexpected {}, {:.3f} s", check.detail["rows"].size(), flagged,
                      check.detail["unexpected"].dump(), t)};
}

Outcome curvature() {
  const auto start = Clock::now();
  const auto check = check_curvature(10000);
  const double t = seconds_since(start);
  double worst = -1e300, dev = 0.0;
  bool flat = true;
  for (const auto& c : check.detail) {
    worst = std::max(worst, c["max_K"].get<double>());
    dev = std::max(dev, c["hyperbolic_max_abs_K_plus_1"].get<double>());
    flat = flat && c["flat_exact_zero"].get<bool>();
  }
  return {check.passed && t < 5.0, fmt::format("6 configs x 10^4 samples, max K {:.3g}, flat exact {}, "
                                               "max |K+1| {:.3g}, {:.3f} s",
                                               worst, flat, dev, t)};
}

Outcome annulus() {
  const auto check = check_annulus();
  std::string parts;
  for (const auto& row : check.detail) {
    parts += fmt::format(" [dim {} R={} exact {:.3g} chain {:.3g} < {:.3g}]", row["dim"].get<int>(),
                         row["R"].get<double>(), row["exact"].get<double>(), row["bound_chain"].get<double>(),
                         row["limit"].get<double>());
  }
  return {check.passed, parts.substr(1)};
}

Outcome ledger() {
  const auto start = Clock::now();
  const auto check = check_ledger();
  const double t = seconds_since(start);
  const auto& d2 = check.detail["dim2"];
  return {check.passed && t < 1.0,
          fmt::format("dim 2 |dW0| {:.4f} vs {:.4f}, dim 3 certified {}, control certified {}, {:.3f} s",
                      d2["disconnected"]["bound"].get<double>(), d2["min_connected_bound"].get<double>(),
                      check.detail["dim3"]["certified"].get<bool>(),
                      check.detail["control"]["certified"].get<bool>(), t)};
}

Outcome gauss_bonnet() {
  const auto check = check_gauss_bonnet();
  double worst = 0.0;
  for (const auto& row : check.detail) worst = std::max(worst, row["defect"].get<double>());
  return {check.passed, fmt::format("{} cases, max defect {:.3g}", check.detail.size(), worst)};
}

Outcome round_trips() {
  const auto check = check_round_trips();
  double worst = 0.0;
  for (const auto& row : check.detail) worst = std::max(worst, row["max_rel_error"].get<double>());
  return {check.passed, fmt::format("E2 E3 H2 H3 over [1e-6, 1e300], max rel error {:.3g}", worst)};
}

Outcome flow_oracle() {
  bool ok = true;
  std::string parts;
  for (double A : {1.0, 10.0, 157.0}) {
    double worst_err = 0.0, worst_dev = 0.0, worst_t = 0.0;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      FlowSpec spec;
      spec.target = A;
      spec.seed = seed;
      const auto start = Clock::now();
      const auto run = run_flow_spec(spec);
      const double t = seconds_since(start);
      const bool run_ok = run.result.status == FlowStatus::converged && *run.oracle_error <= 1e-3 &&
                          run.result.max_area_deviation <= 1e-6 && t < 60.0;
      ok = ok && run_ok;
      worst_err = std::max(worst_err, *run.oracle_error);
      worst_dev = std::max(worst_dev, run.result.max_area_deviation);
      worst_t = std::max(worst_t, t);
    }
    parts += fmt::format(" [A={} rel err {:.2g}, area drift {:.2g}, {:.2f} s]", A, worst_err, worst_dev, worst_t);
  }
  return {ok, parts.substr(1)};
}

Outcome desk_advantage() {
  const auto start = Clock::now();
  const auto check = check_desk_suite(false);
  const double t = seconds_since(start);
  const auto& d = check.detail;
  std::string singles;
  for (const auto& run : d["single_component"]) {
    singles += fmt::format(" {} {:.4f} ({})", run["init"].get<std::string>(), run["length"].get<double>(),
                           run["status"].get<std::string>());
  }
  return {check.passed && t < 300.0,
          fmt::format("two-component {:.4f} vs closed form {:.4f} (stated 25.07 disagrees with its own closed form); "
                      "singles:{}; {:.1f} s",
                      d["best_two_component"].get<double>(), d["closed_form_two_disks"].get<double>(), singles, t)};
}

Outcome determinism() {
  const auto dir = std::filesystem::temp_directory_path() / "islands_acceptance_verify";
  RunConfig config;
  config.command = "verify-all";
  config.out = dir.string();
  config.light = true;
  const int first_code = run_command(config);
  const std::string first = read_bytes(dir / "verify_all.json");
  const int second_code = run_command(config);
  const std::string second = read_bytes(dir / "verify_all.json");
  const bool same = !first.empty() && first == second && first_code == second_code;
  return {same, fmt::format("verify-all --light twice: {} bytes, identical {}, exit codes {} {}", first.size(),
                            first == second, first_code, second_code)};
}

struct Criterion {
  int id;
  const char* title;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "paper-constant table", paper_constants},
      {2, "curvature nonpositivity", curvature},
      {3, "annulus and collar bounds", annulus},
      {4, "ledger certification", ledger},
      {5, "Gauss-Bonnet defect", gauss_bonnet},
      {6, "inverse-solver round trips", round_trips},
      {7, "hyperbolic flow oracle", flow_oracle},
      {8, "two-component advantage at desk scale", desk_advantage},
      {9, "verify-all determinism", determinism},
  };
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  bool all = true;
  for (const auto& c : criteria) {
    if (only && c.id != only) continue;
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, fmt::format("threw: {}", e.what())};
    }
    all = all && outcome.passed;
    fmt::print("criterion {} {}: {} | {}\n", c.id, c.title, outcome.passed ? "PASS" : "FAIL", outcome.summary);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
