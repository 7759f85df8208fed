#include <CLI11.hpp>

#include <exception>
#include <iostream>

#include "islands/errors.hpp"
#include "islands/report.hpp"

namespace {

void keep_if_set(const CLI::Option* opt, double value, std::optional<double>& slot) {
  if (opt->count() > 0) slot = value;
}

}  // namespace

int main(int argc, char** argv) {
  islands::RunConfig config;
  double R = 0, d = 0, target = 0, epsilon = 0, delta_override = 0, collar_budget = 0;

  CLI::App app{"Island metrics: profiles, curvature scans, case ledgers and curve flows"};
  app.set_version_flag("--version", std::string(islands::kArtifactVersion));
  app.set_config("--config", "", "plain key=value file; flags override it");
  app.require_subcommand(1);

  auto* opt_R = app.add_option("--R", R, "island radius");
  app.add_option("--dim", config.dim, "dimension (2 or 3)")->check(CLI::IsMember({2, 3}));
  auto* opt_d = app.add_option("--d", d, "island separation");
  auto* opt_target = app.add_option("--target", target, "enclosed area or volume");
  auto* opt_eps = app.add_option("--epsilon", epsilon, "tube-packing ball radius (dim 3)");
  app.add_option("--epsilon-max", config.epsilon_max, "admissibility cap for epsilon");
  auto* opt_delta = app.add_option("--delta-override", delta_override, "band half-width override");
  auto* opt_budget = app.add_option("--collar-budget", collar_budget, "collar measure budget");
  app.add_option("--seed", config.seed, "seed for flow initializations");
  app.add_option("--out", config.out, "output directory");
  app.add_option("--format", config.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--chart", config.chart, "flow chart: hyperbolic, hyperbolic-half-plane, single-island, twin-island");
  app.add_option("--init", config.init, "flow init: seeded, circle, two-island, island-circle, tube, mid-circle");
  app.add_option("--vertices", config.vertices, "vertices per component (0: init default)");
  app.add_option("--control", config.control, "curvature control warp: euclidean, hyperbolic, spherical");
  app.add_option("--max-iterations", config.max_iterations, "flow iteration cap");
  app.add_flag("--light", config.light, "verify-all: reduced flow suite");

  for (const char* name : {"profile", "curvature", "ledger", "flow", "paper-table", "verify-all"}) {
    app.add_subcommand(name)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  config.command = app.get_subcommands().front()->get_name();
  keep_if_set(opt_R, R, config.R);
  keep_if_set(opt_d, d, config.d);
  keep_if_set(opt_target, target, config.target);
  keep_if_set(opt_eps, epsilon, config.epsilon);
  keep_if_set(opt_delta, delta_override, config.delta_override);
  keep_if_set(opt_budget, collar_budget, config.collar_budget);

  try {
    const int code = islands::run_command(config);
    std::cout << config.command << ": " << (code == 0 ? "ok" : "check failed") << " (" << config.out << ")\n";
    return code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
