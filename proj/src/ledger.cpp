#include "islands/ledger.hpp"

#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "islands/errors.hpp"
#include "islands/numeric.hpp"
#include "islands/space_forms.hpp"
#include "islands/warped_metric.hpp"

namespace islands {

using numeric::pi;

std::string_view to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::disconnected:
      return "disconnected";
    case CaseKind::avoiding_both:
      return "avoiding_both";
    case CaseKind::meets_one:
      return "meets_one";
    case CaseKind::meets_both:
      return "meets_both";
  }
  return "?";
}

double IslandConfig::budget() const {
  if (collar_budget) return *collar_budget;
  return dim == 2 ? 1.0 / R : 0.01;
}

void IslandConfig::validate() const {
  if (dim != 2 && dim != 3) throw ParameterError(fmt::format("dim must be 2 or 3, got {}", dim));
  if (!(R > 1.0)) throw DomainError(fmt::format("R must exceed 1, got {}", R));
  if (!(d > 0.0)) throw ParameterError(fmt::format("separation d must be positive, got {}", d));
  if (!(target > 0.0)) throw ParameterError(fmt::format("target must be positive, got {}", target));
  if (!(budget() > 0.0)) throw ParameterError(fmt::format("collar budget must be positive, got {}", budget()));
}

void PackingParams::validate() const {
  if (!(epsilon > 0.0)) throw ParameterError(fmt::format("epsilon must be positive, got {}", epsilon));
  if (epsilon > epsilon_max) {
    throw ParameterError(fmt::format(
        "epsilon = {} exceeds epsilon_max = {}; raising epsilon_max is an explicit admissibility assertion",
        epsilon, epsilon_max));
  }
}

RadialProfile island_profile(const IslandConfig& config) {
  config.validate();
  if (config.dim == 2) return make_profile(config.R);
  return make_profile(config.R, choose_delta_3d(config.R, config.budget()));
}

namespace {

SpaceForm flat_form(const IslandConfig& c) { return SpaceForm::euclidean(c.dim); }
SpaceForm hyperbolic_form(const IslandConfig& c) { return SpaceForm::hyperbolic(c.dim); }

double packing_per_ball(double eps) { return 2.0 * pi * (std::cosh(eps) - 1.0); }

// Meets-both bound under the printed threshold: d pi (cosh eps - 1) / (4 eps).
double paper_packing_bound(double d, double eps) { return d * pi * (std::cosh(eps) - 1.0) / (4.0 * eps); }

}  // namespace

double island_capacity(const IslandConfig& config) {
  const auto profile = island_profile(config);
  return enclosed_from_radius(flat_form(config), profile.R() - profile.width()) + config.budget();
}

DisconnectedResult disconnected_boundary(const IslandConfig& config) {
  const auto profile = island_profile(config);
  DisconnectedResult out;
  out.flat_radius = profile.R() - profile.width();
  const double capacity = enclosed_from_radius(flat_form(config), out.flat_radius) + config.budget();
  if (2.0 * capacity < config.target) {
    throw InfeasibleError(fmt::format("target {} exceeds the capacity 2 x {:.17g} of the two islands",
                                      config.target, capacity));
  }
  const double half = 0.5 * config.target;
  out.per_island_radius = radius_from_enclosed(flat_form(config), half);
  if (!(out.per_island_radius < out.flat_radius)) {
    throw InfeasibleError(fmt::format(
        "half target {} needs a flat ball of radius {:.17g}, not inside the flat radius {:.17g}", half,
        out.per_island_radius, out.flat_radius));
  }
  out.candidate.kind = CaseKind::disconnected;
  out.candidate.boundary = 2.0 * boundary_from_radius(flat_form(config), out.per_island_radius);
  out.candidate.variant = "two flat balls, equal split";
  out.candidate.citation = "one round ball of half the target in each flat island";
  return out;
}

double split_boundary(const IslandConfig& config, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw ParameterError("split fraction must lie in (0, 1)");
  const auto form = flat_form(config);
  const double capacity = island_capacity(config);
  for (double f : {fraction, 1.0 - fraction}) {
    if (f * config.target > capacity) {
      throw InfeasibleError(fmt::format("split fraction {} puts {:.17g} into an island of capacity {:.17g}", f,
                                        f * config.target, capacity));
    }
  }
  auto part = [&](double f) { return boundary_from_radius(form, radius_from_enclosed(form, f * config.target)); };
  return part(fraction) + part(1.0 - fraction);
}

Candidate bound_avoiding_both(const IslandConfig& config) {
  config.validate();
  Candidate c;
  c.kind = CaseKind::avoiding_both;
  c.boundary = isoperimetric_min_boundary(hyperbolic_form(config), config.target);
  c.variant = "isoperimetric minimum";
  c.citation = config.dim == 2 ? "isoperimetric inequality in H^2" : "isoperimetric inequality in H^3";
  return c;
}

MeetsOneResult bound_meets_one(const IslandConfig& config) {
  const double capacity = island_capacity(config);
  MeetsOneResult out;
  out.outside_exact = std::max(0.0, config.target - capacity);
  out.outside_paper = config.target / 3.0;
  const auto form = hyperbolic_form(config);
  const char* cite = config.dim == 2 ? "half-disk comparison outside a convex set (Choe-Ritore)"
                                     : "hemisphere comparison outside a convex set (Choe-Ritore)";
  out.exact.kind = out.paper.kind = CaseKind::meets_one;
  out.exact.boundary = half_space_bound(form, out.outside_exact);
  out.exact.variant = "exact: target - (flat island measure + collar budget)";
  out.exact.citation = cite;
  out.paper.boundary = half_space_bound(form, out.outside_paper);
  out.paper.variant = "target / 3";
  out.paper.citation = cite;
  return out;
}

MeetsBothResult bound_meets_both(const IslandConfig& config,
                                 const std::optional<PackingParams>& packing) {
  config.validate();
  MeetsBothResult out;
  out.used.kind = CaseKind::meets_both;
  if (config.dim == 2) {
    out.used.boundary = 2.0 * config.d;
    out.used.variant = "2d";
    out.used.citation = "two crossings of the gap between the convex islands";
    return out;
  }
  if (!packing) throw ParameterError("dim 3 meets-both bound needs packing parameters (epsilon)");
  packing->validate();
  const double eps = packing->epsilon;
  out.per_ball = packing_per_ball(eps);
  out.balls = std::floor(config.d / (4.0 * eps));
  out.used.boundary = paper_packing_bound(config.d, eps);
  out.used.variant = "printed threshold: d pi (cosh eps - 1) / (4 eps)";
  out.used.citation = "disjoint eps-balls centred on the surface inside the middle slab";
  Candidate model;
  model.kind = CaseKind::meets_both;
  model.boundary = out.balls * out.per_ball;
  model.variant = "ball count: floor(d / (4 eps)) 2 pi (cosh eps - 1)";
  model.citation = out.used.citation;
  out.model = model;
  return out;
}

SeparationThreshold min_separation_3d(const IslandConfig& config, const PackingParams& packing,
                                      std::optional<double> target_area) {
  packing.validate();
  SeparationThreshold t;
  t.target_area = target_area ? *target_area : disconnected_boundary(config).candidate.boundary + 1.0;
  if (!(t.target_area >= 0.0)) throw ParameterError("target area must be non-negative");
  const double eps = packing.epsilon;
  const double per_ball = packing_per_ball(eps);
  t.paper = t.target_area * 4.0 * eps / (pi * (std::cosh(eps) - 1.0));
  t.model = 4.0 * eps * std::ceil(t.target_area / per_ball);
  return t;
}

double best_epsilon(const IslandConfig& config, double epsilon_max) {
  if (!(epsilon_max > 0.0)) throw ParameterError("epsilon_max must be positive");
  auto negative_bound = [&](double eps) { return -paper_packing_bound(config.d, eps); };
  const auto best =
      boost::math::tools::brent_find_minima(negative_bound, epsilon_max * 1e-6, epsilon_max, 50);
  return best.first;
}

Verdict verdict(const IslandConfig& config, const std::optional<PackingParams>& packing) {
  config.validate();
  Verdict v;
  v.config = config;
  v.packing = packing;
  v.width = island_profile(config).width();
  v.disconnected = disconnected_boundary(config);
  const double base = v.disconnected.candidate.boundary;

  const auto avoid = bound_avoiding_both(config);
  const auto one = bound_meets_one(config);
  const auto both = bound_meets_both(config, packing);

  for (const auto& c : {avoid, one.exact, both.used}) v.cases.push_back({c, c.boundary - base});
  v.reported.push_back(one.paper);
  if (both.model) v.reported.push_back(*both.model);
  if (config.dim == 3) v.threshold = min_separation_3d(config, *packing);

  v.min_connected_bound = std::numeric_limits<double>::infinity();
  for (const auto& rec : v.cases) {
    if (rec.candidate.boundary < v.min_connected_bound) {
      v.min_connected_bound = rec.candidate.boundary;
      v.weakest_case = rec.candidate.kind;
    }
    if (!(rec.margin > 0.0)) v.failing_cases.emplace_back(to_string(rec.candidate.kind));
  }
  v.margin = v.min_connected_bound - base;
  v.certified = v.margin > 0.0;
  if (packing) {
    v.notes.push_back(fmt::format("epsilon = {} admitted under epsilon_max = {} (user assertion)",
                                  packing->epsilon, packing->epsilon_max));
  }
  return v;
}

}  // namespace islands
