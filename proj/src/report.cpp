#include "islands/report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fmt/format.h>
#include <fstream>
#include <limits>

#include "islands/errors.hpp"
#include "islands/experiments.hpp"
#include "islands/ledger.hpp"
#include "islands/numeric.hpp"
#include "islands/space_forms.hpp"
#include "islands/warped_metric.hpp"

namespace islands {

using numeric::pi;
namespace fs = std::filesystem;

std::string format_number(double value) { return fmt::format("{:.17g}", value); }

std::string dump_json(const Json& doc) { return doc.dump(2) + "\n"; }

std::string_view to_string(Relation relation) {
  switch (relation) {
    case Relation::approx:
      return "approx";
    case Relation::at_least:
      return "at_least";
    case Relation::below:
      return "below";
  }
  return "?";
}

double PaperRow::deviation() const { return std::abs(computed - stated); }

namespace {

constexpr double kCurvatureTol = 1e-9;

Json optional_json(const std::optional<double>& value) { return value ? Json(*value) : Json(nullptr); }

void write_text(const RunConfig& config, std::string_view name, const std::string& text) {
  std::error_code ec;
  fs::create_directories(config.out, ec);
  if (ec) throw IoError(fmt::format("cannot create output directory '{}': {}", config.out, ec.message()));
  const auto path = fs::path(config.out) / name;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
  os << text;
  os.flush();
  if (!os) throw IoError(fmt::format("write to '{}' failed", path.string()));
}

std::string cell(double v) { return format_number(v); }
std::string cell(std::size_t v) { return fmt::format("{}", v); }
std::string cell(bool v) { return v ? "true" : "false"; }
std::string cell(std::string_view v) {
  if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
  std::string quoted = "\"";
  for (char ch : v) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}
std::string cell(const char* v) { return cell(std::string_view(v)); }
std::string cell(const std::string& v) { return cell(std::string_view(v)); }

template <typename... Ts>
void csv_line(std::string& out, const Ts&... cells) {
  std::string line;
  ((line += (line.empty() ? "" : ","), line += cell(cells)), ...);
  out += line;
  out += '\n';
}

Json envelope(const RunConfig& config) {
  Json doc;
  doc["artifact"] = kArtifactName;
  doc["version"] = kArtifactVersion;
  doc["config"] = config_json(config);
  return doc;
}

IslandConfig island_config(int dim, double R, double d, double target) {
  IslandConfig c;
  c.dim = dim;
  c.R = R;
  c.d = d;
  c.target = target;
  return c;
}

// ---- stated constants ----

PaperRow make_row(std::string id, std::string quantity, Relation relation, double stated, double computed,
                  double tolerance, std::string provenance, std::string note = {}) {
  PaperRow row{std::move(id), std::move(quantity), relation, stated, computed, tolerance,
               std::move(provenance), std::move(note), false};
  switch (relation) {
    case Relation::approx:
      row.ok = row.deviation() <= tolerance;
      break;
    case Relation::at_least:
      row.ok = computed >= stated;
      break;
    case Relation::below:
      row.ok = computed < stated;
      break;
  }
  return row;
}

Json row_json(const PaperRow& row) {
  Json j;
  j["id"] = row.id;
  j["quantity"] = row.quantity;
  j["relation"] = to_string(row.relation);
  j["stated"] = row.stated;
  j["computed"] = row.computed;
  j["abs_delta"] = row.deviation();
  j["tolerance"] = row.relation == Relation::approx ? Json(row.tolerance) : Json(nullptr);
  j["provenance"] = row.provenance;
  j["flag"] = row.ok ? "ok" : "discrepancy";
  j["note"] = row.note;
  return j;
}

// ---- curvature scans ----

struct ScanRow {
  std::string_view piece;
  double coord = 0.0;
  Jet jet;
  CurvatureSample k;
};

struct ScanSummary {
  std::size_t samples = 0;
  double max_K = -std::numeric_limits<double>::infinity();
  double flat_max_abs = 0.0;        // over both curvatures on the flat piece
  double hyperbolic_max_dev = 0.0;  // max |K + 1| on the hyperbolic piece
  double band_max_K = -std::numeric_limits<double>::infinity();
  bool flat_exact = true;

  bool nonpositive() const { return max_K <= kCurvatureTol; }
};

std::vector<ScanRow> island_scan(const WarpedMetric& metric, std::size_t n) {
  const auto& p = metric.profile();
  const double R = p.R(), w = p.width();
  const std::size_t n_flat = n / 3, n_band = n / 3, n_hyp = n - n_flat - n_band;
  std::vector<ScanRow> rows;
  rows.reserve(n);
  for (std::size_t i = 1; i <= n_flat; ++i) {
    const double r = (R - w) * static_cast<double>(i) / static_cast<double>(n_flat + 1);
    rows.push_back({to_string(p.piece_at(r)), r, metric.jet(r), sectional_curvatures(metric, r)});
  }
  for (std::size_t i = 0; i < n_band; ++i) {
    const double s = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(n_band - 1);
    rows.push_back({to_string(Piece::band), s, p.band_jet(s), band_curvatures(metric, s)});
  }
  for (std::size_t i = 1; i <= n_hyp; ++i) {
    const double r = R + w + 2.0 * R * static_cast<double>(i) / static_cast<double>(n_hyp);
    rows.push_back({to_string(p.piece_at(r)), r, metric.jet(r), sectional_curvatures(metric, r)});
  }
  return rows;
}

std::vector<ScanRow> control_scan(const WarpedMetric& metric, double r_max, std::size_t n) {
  std::vector<ScanRow> rows;
  rows.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double r = r_max * static_cast<double>(i) / static_cast<double>(n + 1);
    rows.push_back({to_string(metric.kind()), r, metric.jet(r), sectional_curvatures(metric, r)});
  }
  return rows;
}

ScanSummary summarize(const std::vector<ScanRow>& rows) {
  ScanSummary s;
  s.samples = rows.size();
  for (const auto& row : rows) {
    const double hi = std::max(row.k.K_radial, row.k.K_tangential);
    s.max_K = std::max(s.max_K, hi);
    if (row.piece == to_string(Piece::flat)) {
      s.flat_exact = s.flat_exact && row.k.K_tangential == 0.0 && row.k.K_radial == 0.0;
      s.flat_max_abs = std::max({s.flat_max_abs, std::abs(row.k.K_radial), std::abs(row.k.K_tangential)});
    } else if (row.piece == to_string(Piece::hyperbolic)) {
      s.hyperbolic_max_dev =
          std::max({s.hyperbolic_max_dev, std::abs(row.k.K_radial + 1.0), std::abs(row.k.K_tangential + 1.0)});
    } else if (row.piece == to_string(Piece::band)) {
      s.band_max_K = std::max(s.band_max_K, hi);
    }
  }
  return s;
}

Json summary_json(const ScanSummary& s) {
  Json j;
  j["samples"] = s.samples;
  j["max_K"] = s.max_K;
  j["band_max_K"] = std::isfinite(s.band_max_K) ? Json(s.band_max_K) : Json(nullptr);
  j["flat_max_abs_K"] = s.flat_max_abs;
  j["flat_exact_zero"] = s.flat_exact;
  j["hyperbolic_max_abs_K_plus_1"] = s.hyperbolic_max_dev;
  j["tolerance"] = kCurvatureTol;
  j["nonpositive"] = s.nonpositive();
  return j;
}

// ---- ledger ----

Json candidate_json(const Candidate& c) {
  Json j;
  j["case"] = to_string(c.kind);
  j["bound"] = c.boundary;
  j["variant"] = c.variant;
  j["citation"] = c.citation;
  return j;
}

Json verdict_json(const Verdict& v) {
  Json j;
  Json cfg;
  cfg["dim"] = v.config.dim;
  cfg["R"] = v.config.R;
  cfg["d"] = v.config.d;
  cfg["target"] = v.config.target;
  cfg["collar_budget"] = v.config.budget();
  j["island"] = cfg;
  if (v.packing) {
    j["packing"] = {{"epsilon", v.packing->epsilon}, {"epsilon_max", v.packing->epsilon_max}};
  } else {
    j["packing"] = nullptr;
  }
  j["band_width"] = v.width;
  Json dis = candidate_json(v.disconnected.candidate);
  dis["per_island_radius"] = v.disconnected.per_island_radius;
  dis["flat_radius"] = v.disconnected.flat_radius;
  j["disconnected"] = dis;
  Json cases = Json::array();
  for (const auto& rec : v.cases) {
    Json c = candidate_json(rec.candidate);
    c["margin"] = rec.margin;
    cases.push_back(c);
  }
  j["cases"] = cases;
  Json reported = Json::array();
  for (const auto& c : v.reported) reported.push_back(candidate_json(c));
  j["reported_variants"] = reported;
  if (v.threshold) {
    j["separation_threshold"] = {{"target_area", v.threshold->target_area},
                                 {"printed_formula", v.threshold->paper},
                                 {"ball_count_model", v.threshold->model}};
  }
  j["min_connected_bound"] = v.min_connected_bound;
  j["weakest_case"] = to_string(v.weakest_case);
  j["margin"] = v.margin;
  j["certified"] = v.certified;
  j["failing_cases"] = v.failing_cases;
  j["notes"] = v.notes;
  return j;
}

// ---- flows ----

Json flow_run_json(const FlowRun& run) {
  const auto& res = run.result;
  Json j;
  j["chart"] = to_string(run.spec.chart);
  j["init"] = to_string(run.spec.init);
  j["target"] = run.spec.target;
  j["seed"] = run.spec.seed;
  j["components"] = res.state.curve.components.size();
  j["vertices"] = res.state.curve.vertex_count();
  j["status"] = to_string(res.status);
  j["event"] = res.event;
  j["iterations"] = res.state.iteration;
  j["accepted_steps"] = res.state.accepted;
  j["length"] = res.state.length;
  j["area"] = res.state.area;
  j["max_area_deviation"] = res.max_area_deviation;
  j["max_length_increase"] = res.max_length_increase;
  j["kg_relative_spread"] = res.kg_relative_spread;
  j["kg_mean"] = res.state.kg_mean;
  j["oracle_length"] = optional_json(run.oracle);
  j["oracle_rel_error"] = optional_json(run.oracle_error);
  return j;
}

bool hyperbolic_run_ok(const FlowRun& run) {
  return run.result.status == FlowStatus::converged && run.oracle_error && *run.oracle_error <= 1e-3 &&
         run.result.max_area_deviation <= 1e-6;
}

InitKind default_init(ChartKind chart) {
  switch (chart) {
    case ChartKind::hyperbolic_disk:
      return InitKind::seeded;
    case ChartKind::hyperbolic_half_plane:
    case ChartKind::single_island:
      return InitKind::circle;
    case ChartKind::twin_island:
      return InitKind::two_island;
  }
  return InitKind::seeded;
}

void write_svg_profile(const RunConfig& config, const RadialProfile& profile) {
  const double width = 640, height = 400, margin = 40;
  const double r_max = profile.R() + 3.0;
  const double h_max = profile.eval(r_max).h;
  auto x_of = [&](double r) { return margin + (width - 2 * margin) * r / r_max; };
  auto y_of = [&](double h) { return height - margin - (height - 2 * margin) * h / h_max; };
  std::string points;
  constexpr int n = 400;
  for (int i = 0; i <= n; ++i) {
    const double r = r_max * i / n;
    points += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", x_of(r), y_of(profile.eval(r).h));
  }
  std::string svg;
  svg += fmt::format("<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
                     width, height, width, height);
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{2}\" y2=\"{1}\" stroke=\"black\"/>\n", margin,
                     height - margin, width - margin);
  svg += fmt::format("<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n", margin,
                     height - margin, margin);
  svg += fmt::format("<line x1=\"{0:.3f}\" y1=\"{1}\" x2=\"{0:.3f}\" y2=\"{2}\" stroke=\"gray\" "
                     "stroke-dasharray=\"4 4\"/>\n",
                     x_of(profile.R()), height - margin, margin);
  svg += fmt::format("<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{}\"/>\n", points);
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">r</text>\n", width - margin + 5, height - margin + 4);
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\">h(r)</text>\n", margin - 10, margin - 10);
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">0</text>\n", margin - 4, height - margin + 16);
  svg += fmt::format("<text x=\"{:.3f}\" y=\"{}\" font-size=\"11\">R={}</text>\n", x_of(profile.R()) - 12,
                     height - margin + 16, profile.R());
  svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{:.4g}</text>\n", width - margin - 12,
                     height - margin + 16, r_max);
  svg += fmt::format("<text x=\"4\" y=\"{}\" font-size=\"11\">{:.4g}</text>\n", margin + 4, h_max);
  svg += "</svg>\n";
  write_text(config, "profile.svg", svg);
}

WarpKind control_kind(std::string_view name) {
  for (auto k : {WarpKind::euclidean, WarpKind::hyperbolic, WarpKind::spherical}) {
    if (to_string(k) == name) return k;
  }
  throw ParameterError(fmt::format("unknown control warp '{}'", name));
}

}  // namespace

RunConfig resolve(RunConfig c) {
  const bool flow = c.command == "flow";
  const bool figure = c.command == "profile" || c.command == "curvature";
  if (c.dim != 2 && c.dim != 3) throw ParameterError(fmt::format("dim must be 2 or 3, got {}", c.dim));
  if (c.format != "json" && c.format != "csv") throw ParameterError(fmt::format("unknown format '{}'", c.format));
  if (!c.R) c.R = flow || figure ? 5.0 : 100.0;
  if (!c.d) c.d = flow ? 32.0 : (c.dim == 3 ? 6e5 : 1000.0);
  if (flow) {
    const auto chart = chart_from_string(c.chart);
    if (c.init.empty()) c.init = to_string(default_init(chart));
    init_from_string(c.init);
    if (!c.target) c.target = chart == ChartKind::twin_island ? 157.0 : 10.0;
  }
  if (!c.target) c.target = c.dim == 3 ? 8377580.0 : 62830.0;
  return c;
}

Json config_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["dim"] = c.dim;
  j["R"] = optional_json(c.R);
  j["d"] = optional_json(c.d);
  j["target"] = optional_json(c.target);
  j["epsilon"] = optional_json(c.epsilon);
  j["epsilon_max"] = c.epsilon_max;
  j["delta_override"] = optional_json(c.delta_override);
  j["collar_budget"] = optional_json(c.collar_budget);
  j["seed"] = c.seed;
  j["out"] = c.out;
  j["format"] = c.format;
  j["chart"] = c.chart;
  j["init"] = c.init;
  j["vertices"] = c.vertices;
  j["control"] = c.control;
  j["max_iterations"] = c.max_iterations;
  j["light"] = c.light;
  return j;
}

std::vector<PaperRow> paper_table() {
  using R = Relation;
  const SpaceForm E2 = SpaceForm::euclidean(2), E3 = SpaceForm::euclidean(3);
  const SpaceForm H2 = SpaceForm::hyperbolic(2), H3 = SpaceForm::hyperbolic(3);
  const auto profile = make_profile(100.0);
  const double C = profile.C();
  const auto plane = island_config(2, 100.0, 1000.0, 62830.0);
  const auto space = island_config(3, 100.0, 6e5, 8377580.0);
  const std::string construction = "island construction, R=100";
  const std::string lemma = "connected-region lemma, dim 2";
  const std::string dim3 = "dimension three, V=8377580";

  std::vector<PaperRow> rows;
  rows.push_back(make_row("C", "R - asinh(R), R=100", R::approx, 94.70, C, 0.01, construction));
  rows.push_back(make_row("delta", "1 / (4 pi R sinh 2R), R=100", R::approx, 2.2e-90, profile.params().delta,
                          0.05 * 2.2e-90, construction, "tolerance 5%"));
  rows.push_back(make_row("annulus_2d", "band annulus area, R=100", R::below, 0.01,
                          annulus_measure(WarpedMetric::island(profile, 2)).measure, 0.0, construction));
  rows.push_back(make_row("A0", "E2 disk area, r=100", R::approx, 31416, enclosed_from_radius(E2, 100.0), 1.0,
                          construction));
  rows.push_back(make_row("A0_length", "E2 circle length, r=100", R::approx, 628, boundary_from_radius(E2, 100.0),
                          1.0, construction));
  rows.push_back(make_row("radius_100_minus_C", "100 - C", R::approx, 5.3, 100.0 - C, 0.05, construction));
  rows.push_back(make_row("A1", "H2 disk area, r=100-C", R::approx, 629, enclosed_from_radius(H2, 100.0 - C), 0.5,
                          construction, "circumference matches; stated area does not"));
  rows.push_back(make_row("A1_length", "H2 circle length, r=100-C", R::approx, 628,
                          boundary_from_radius(H2, 100.0 - C), 0.5, construction));
  rows.push_back(make_row("H2_radius_A", "H2 radius enclosing 62830", R::approx, 9.9,
                          radius_from_enclosed(H2, 62830.0), 0.05, construction,
                          "stated for area A0; the figure belongs to area 62830"));
  rows.push_back(make_row("H2_length_A", "H2 circle length enclosing 62830", R::approx, 62838,
                          isoperimetric_min_boundary(H2, 62830.0), 0.5, construction,
                          "stated for area A0; the figure belongs to area 62830"));
  rows.push_back(make_row("avoid_both_2d", "H2 isoperimetric bound, area 62830", R::at_least, 62837,
                          bound_avoiding_both(plane).boundary, 0.0, lemma, "stated as a strict lower bound"));
  rows.push_back(make_row("A_over_3", "A / 3", R::approx, 20610, 62830.0 / 3.0, 0.5, lemma,
                          "62830 / 3 = 20943.3; the stated value is used as the half-disk input"));
  rows.push_back(make_row("half_disk", "half-disk bound (Choe-Ritore), area 20610", R::at_least, 20606,
                          half_space_bound(H2, 20610.0), 0.0, lemma));
  rows.push_back(make_row("meets_both_2d", "gap crossing bound 2d, d=1000", R::at_least, 2000,
                          bound_meets_both(plane, std::nullopt).used.boundary, 0.0, lemma));
  const auto v2 = verdict(plane, std::nullopt);
  rows.push_back(make_row("connected_2d", "min connected bound, dim 2", R::at_least, 1257, v2.min_connected_bound,
                          0.0, lemma));
  rows.push_back(make_row("disconnected_2d", "two flat disks, area 62830", R::below, 1256,
                          disconnected_boundary(plane).candidate.boundary, 0.0, "disconnected candidate, dim 2",
                          "closed form 2 * 2 pi sqrt(31415 / pi); still certifies against 1257"));
  rows.push_back(make_row("E3_volume", "E3 ball volume, r=100", R::approx, 4188790, enclosed_from_radius(E3, 100.0),
                          10.0, dim3));
  rows.push_back(make_row("E3_area", "E3 sphere area, r=100", R::approx, 125664, boundary_from_radius(E3, 100.0), 1.0,
                          dim3));
  const double w3 = choose_delta_3d(100.0, 0.01);
  rows.push_back(make_row("collar_3d", "collar shell volume, R=100", R::below, 0.01,
                          annulus_measure(WarpedMetric::island(make_profile(100.0, w3), 3), 0.01).measure, 0.0, dim3));
  const auto dis3 = disconnected_boundary(space).candidate.boundary;
  rows.push_back(make_row("disconnected_3d_early", "two flat balls, volume 8377580", R::below, 251229, dis3, 0.0, dim3,
                          "the later figure 251327 matches"));
  rows.push_back(make_row("disconnected_3d", "two flat balls, volume 8377580", R::approx, 251327, dis3, 0.5, dim3));
  rows.push_back(make_row("H3_volume", "H3 ball volume, r=7.74475", R::approx, 8377580,
                          enclosed_from_radius(H3, 7.74475), 500.0, dim3));
  rows.push_back(make_row("H3_area", "H3 isoperimetric bound, volume 8377580", R::at_least, 1.67e7,
                          bound_avoiding_both(space).boundary, 0.0, dim3));
  rows.push_back(make_row("V_over_3", "V / 3", R::at_least, 2792526, 8377580.0 / 3.0, 0.0, dim3));
  rows.push_back(make_row("hemisphere", "hemisphere bound (Choe-Ritore), volume 2792526", R::approx, 5.585e6,
                          half_space_bound(H3, 2792526.0), 0.001 * 5.585e6, dim3, "tolerance 0.1%"));
  return rows;
}

CheckResult check_paper_table() {
  const auto rows = paper_table();
  const std::vector<std::string> must_match = {"C",       "delta",     "A0",         "A0_length",
                                               "E3_volume", "E3_area", "H3_volume", "hemisphere",
                                               "H3_area", "half_disk"};
  const std::vector<std::string> must_flag = {"A1", "avoid_both_2d", "disconnected_2d", "disconnected_3d_early"};
  auto find = [&](const std::string& id) -> const PaperRow* {
    for (const auto& r : rows) {
      if (r.id == id) return &r;
    }
    return nullptr;
  };
  CheckResult out{"paper_table", true, {}};
  Json misses = Json::array();
  for (const auto& id : must_match) {
    const auto* r = find(id);
    if (!r || !r->ok) {
      out.passed = false;
      misses.push_back(id);
    }
  }
  for (const auto& id : must_flag) {
    const auto* r = find(id);
    if (!r || r->ok) {
      out.passed = false;
      misses.push_back(id);
    }
  }
  Json table = Json::array();
  for (const auto& r : rows) table.push_back(row_json(r));
  out.detail["rows"] = table;
  out.detail["discrepancies"] = static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const PaperRow& r) { return !r.ok; }));
  out.detail["unexpected"] = misses;
  return out;
}

CheckResult check_curvature(std::size_t samples) {
  CheckResult out{"curvature", true, Json::array()};
  for (double R : {1.5, 5.0, 100.0}) {
    for (int dim : {2, 3}) {
      const auto metric = WarpedMetric::island(make_profile(R), dim);
      const auto s = summarize(island_scan(metric, samples));
      const bool ok = s.nonpositive() && s.flat_exact && s.hyperbolic_max_dev <= kCurvatureTol;
      out.passed = out.passed && ok;
      Json j = summary_json(s);
      j["R"] = R;
      j["dim"] = dim;
      j["passed"] = ok;
      out.detail.push_back(j);
    }
  }
  return out;
}

CheckResult check_annulus() {
  CheckResult out{"annulus", true, {}};
  Json rows = Json::array();
  for (double R : {1.5, 5.0, 100.0}) {
    const auto rep = annulus_measure(WarpedMetric::island(make_profile(R), 2));
    out.passed = out.passed && rep.measure_ok;
    rows.push_back({{"dim", 2},
                    {"R", R},
                    {"exact", rep.measure},
                    {"bound_chain", rep.paper_bound},
                    {"limit", rep.limit},
                    {"exact_ok", rep.measure_ok},
                    {"bound_ok", rep.bound_ok}});
  }
  const double width = choose_delta_3d(100.0, 0.01);
  const auto rep = annulus_measure(WarpedMetric::island(make_profile(100.0, width), 3), 0.01);
  out.passed = out.passed && rep.measure_ok;
  rows.push_back({{"dim", 3},
                  {"R", 100.0},
                  {"width", width},
                  {"exact", rep.measure},
                  {"bound_chain", rep.paper_bound},
                  {"limit", rep.limit},
                  {"exact_ok", rep.measure_ok},
                  {"bound_ok", rep.bound_ok}});
  out.detail = rows;
  return out;
}

CheckResult check_ledger() {
  CheckResult out{"ledger", true, {}};
  const auto v2 = verdict(island_config(2, 100.0, 1000.0, 62830.0), std::nullopt);
  const auto v3 = verdict(island_config(3, 100.0, 6e5, 8377580.0), PackingParams{1.0, 1.0});
  const auto control = verdict(island_config(2, 100.0, 100.0, 62830.0), std::nullopt);
  const bool ok2 = v2.certified && std::abs(v2.disconnected.candidate.boundary - 1256.61) <= 0.01 &&
                   std::abs(v2.min_connected_bound - 2000.0) <= 0.01;
  const bool ok3 = v3.certified;
  const bool ok_control = !control.certified;
  out.passed = ok2 && ok3 && ok_control;
  out.detail["dim2"] = verdict_json(v2);
  out.detail["dim3"] = verdict_json(v3);
  out.detail["control"] = verdict_json(control);
  out.detail["dim2_ok"] = ok2;
  out.detail["dim3_ok"] = ok3;
  out.detail["control_rejected"] = ok_control;
  return out;
}

CheckResult check_gauss_bonnet() {
  CheckResult out{"gauss_bonnet", true, Json::array()};
  double worst = 0.0;
  auto record = [&](const WarpedMetric& metric, std::string_view label, double R, double r0) {
    const double defect = gauss_bonnet_check(metric, r0);
    worst = std::max(worst, defect);
    out.detail.push_back({{"metric", label}, {"R", R}, {"r0", r0}, {"defect", defect}});
  };
  record(WarpedMetric::pure(WarpKind::euclidean, 2), "euclidean", 0.0, 2.0);
  for (double r0 : {1.0, 3.0}) record(WarpedMetric::pure(WarpKind::hyperbolic, 2), "hyperbolic", 0.0, r0);
  for (double R : {1.5, 2.0, 5.0, 10.0, 100.0}) {
    const auto metric = WarpedMetric::island(make_profile(R), 2);
    for (double r0 : {0.5 * R, R + 0.5, R + 3.0}) record(metric, "island", R, r0);
  }
  out.passed = worst < 1e-8;
  return out;
}

CheckResult check_round_trips() {
  CheckResult out{"round_trips", true, Json::array()};
  struct Named {
    std::string_view name;
    SpaceForm form;
  };
  for (const auto& [name, form] : {Named{"E2", SpaceForm::euclidean(2)}, Named{"E3", SpaceForm::euclidean(3)},
                                   Named{"H2", SpaceForm::hyperbolic(2)}, Named{"H3", SpaceForm::hyperbolic(3)}}) {
    double worst = 0.0;
    std::size_t count = 0;
    for (int k = -12; k <= 600; ++k) {
      const double v = std::pow(10.0, 0.5 * k);
      const double back = enclosed_from_radius(form, radius_from_enclosed(form, v));
      worst = std::max(worst, std::abs(back - v) / v);
      ++count;
    }
    const bool ok = worst <= 1e-10;
    out.passed = out.passed && ok;
    out.detail.push_back({{"form", name}, {"samples", count}, {"max_rel_error", worst}, {"passed", ok}});
  }
  return out;
}

CheckResult check_hyperbolic_flows(bool light) {
  CheckResult out{"hyperbolic_flows", true, Json::array()};
  const std::vector<double> areas = light ? std::vector<double>{10.0} : std::vector<double>{1.0, 10.0, 157.0};
  const std::vector<std::uint64_t> seeds = light ? std::vector<std::uint64_t>{1} : std::vector<std::uint64_t>{1, 2, 3};
  for (double A : areas) {
    for (auto seed : seeds) {
      FlowSpec spec;
      spec.target = A;
      spec.seed = seed;
      const auto run = run_flow_spec(spec);
      const bool ok = hyperbolic_run_ok(run);
      out.passed = out.passed && ok;
      Json j = flow_run_json(run);
      j["passed"] = ok;
      out.detail.push_back(j);
    }
  }
  return out;
}

CheckResult check_desk_suite(bool light) {
  const auto suite = desk_suite({1, 2, 3}, light);
  CheckResult out{"desk_suite", suite.two_within_tolerance && suite.advantage, {}};
  constexpr double stated = 25.07;
  out.detail["R"] = suite.R;
  out.detail["d"] = suite.d;
  out.detail["target"] = suite.target;
  out.detail["closed_form_two_disks"] = suite.reference;
  out.detail["stated_two_component"] = stated;
  out.detail["stated_matches_closed_form"] = std::abs(stated - suite.reference) <= 0.01 * suite.reference;
  out.detail["best_two_component"] = suite.best_two;
  out.detail["best_single_component"] = suite.best_single;
  out.detail["two_within_1pct"] = suite.two_within_tolerance;
  out.detail["advantage"] = suite.advantage;
  Json two = Json::array(), single = Json::array();
  for (const auto& run : suite.two_component) two.push_back(flow_run_json(run));
  for (const auto& run : suite.single_component) single.push_back(flow_run_json(run));
  out.detail["two_component"] = two;
  out.detail["single_component"] = single;
  return out;
}

std::vector<CheckResult> verify_all(bool light) {
  std::vector<CheckResult> checks;
  checks.push_back(check_paper_table());
  checks.push_back(check_curvature());
  checks.push_back(check_annulus());
  checks.push_back(check_ledger());
  checks.push_back(check_gauss_bonnet());
  checks.push_back(check_round_trips());
  checks.push_back(check_hyperbolic_flows(light));
  checks.push_back(check_desk_suite(light));
  return checks;
}

int cmd_profile(const RunConfig& config) {
  const auto profile = make_profile(*config.R, config.delta_override);
  const double R = profile.R();
  std::string flat, hyperbolic;
  const int n = static_cast<int>(std::ceil(3.0 * R * 20.0));
  for (int i = 0; i <= n; ++i) {
    const double r = i / 20.0;
    const Piece piece = profile.piece_at(r);
    if (piece == Piece::band) continue;
    const Jet j = profile.eval(r);
    csv_line(piece == Piece::flat ? flat : hyperbolic, to_string(piece), r, j.h, j.h - R, j.dh, j.d2h);
  }
  std::string band;
  constexpr int n_band = 201;
  for (int i = 0; i < n_band; ++i) {
    const double s = -1.0 + 2.0 * i / (n_band - 1);
    const BandJet b = profile.eval_band(s);
    csv_line(band, to_string(Piece::band), s, b.h, b.offset, b.dh, b.d2h);
  }
  std::string csv;
  csv_line(csv, "piece", "coord", "h", "offset", "dh", "d2h");
  write_text(config, "profile.csv", csv + flat + band + hyperbolic);
  write_svg_profile(config, profile);
  return 0;
}

int cmd_curvature(const RunConfig& config) {
  constexpr std::size_t samples = 10000;
  std::vector<ScanRow> rows;
  if (config.control.empty()) {
    rows = island_scan(WarpedMetric::island(make_profile(*config.R, config.delta_override), config.dim), samples);
  } else {
    const WarpKind kind = control_kind(config.control);
    const double r_max = kind == WarpKind::spherical ? pi : 3.0 * *config.R;
    rows = control_scan(WarpedMetric::pure(kind, config.dim), r_max, samples);
  }
  std::string csv;
  csv_line(csv, "piece", "coord", "h", "dh", "d2h", "K_radial", "K_tangential");
  for (const auto& row : rows) {
    csv_line(csv, row.piece, row.coord, row.jet.h, row.jet.dh, row.jet.d2h, row.k.K_radial, row.k.K_tangential);
  }
  write_text(config, "curvature.csv", csv);
  const auto summary = summarize(rows);
  Json doc = envelope(config);
  doc["summary"] = summary_json(summary);
  write_text(config, "curvature.json", dump_json(doc));
  return summary.nonpositive() ? 0 : 2;
}

int cmd_ledger(const RunConfig& config) {
  IslandConfig island = island_config(config.dim, *config.R, *config.d, *config.target);
  island.collar_budget = config.collar_budget;
  std::optional<PackingParams> packing;
  if (config.dim == 3) {
    island.validate();
    PackingParams p;
    p.epsilon_max = config.epsilon_max;
    p.epsilon = config.epsilon.value_or(best_epsilon(island, config.epsilon_max));
    p.validate();
    packing = p;
  }
  const auto v = verdict(island, packing);
  if (config.format == "csv") {
    std::string csv;
    csv_line(csv, "case", "bound", "variant", "citation", "margin");
    csv_line(csv, to_string(v.disconnected.candidate.kind), v.disconnected.candidate.boundary,
             v.disconnected.candidate.variant, v.disconnected.candidate.citation, 0.0);
    for (const auto& rec : v.cases) {
      csv_line(csv, to_string(rec.candidate.kind), rec.candidate.boundary, rec.candidate.variant,
               rec.candidate.citation, rec.margin);
    }
    csv_line(csv, "verdict", v.min_connected_bound, v.certified ? "certified" : "not certified",
             to_string(v.weakest_case), v.margin);
    write_text(config, "ledger.csv", csv);
  } else {
    Json doc = envelope(config);
    doc["verdict"] = verdict_json(v);
    write_text(config, "ledger.json", dump_json(doc));
  }
  return v.certified ? 0 : 2;
}

int cmd_flow(const RunConfig& config) {
  FlowSpec spec;
  spec.chart = chart_from_string(config.chart);
  spec.init = init_from_string(config.init);
  spec.R = *config.R;
  spec.d = *config.d;
  spec.target = *config.target;
  spec.seed = config.seed;
  spec.vertices = config.vertices;
  spec.params.max_iterations = config.max_iterations;
  const auto run = run_flow_spec(spec);
  const auto chart = make_chart(spec);

  std::string trace;
  csv_line(trace, "iteration", "length", "area", "kg_spread");
  for (const auto& row : run.result.trace) csv_line(trace, row.iteration, row.length, row.area, row.kg_spread);
  write_text(config, "flow_trace.csv", trace);

  std::string curves;
  csv_line(curves, "component", "vertex", "x", "y");
  const auto& comps = run.result.state.curve.components;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    for (std::size_t i = 0; i < comps[c].size(); ++i) csv_line(curves, c, i, comps[c][i].real(), comps[c][i].imag());
  }
  write_text(config, "flow_curves.csv", curves);

  Json doc = envelope(config);
  doc["run"] = flow_run_json(run);
  Json convexity = Json::array();
  for (const auto& c : convexity_diagnostic(chart, run.result.state.curve)) {
    convexity.push_back({{"component", c.component},
                         {"min_curvature", c.min_curvature},
                         {"max_curvature", c.max_curvature},
                         {"nonpositive_vertices", c.nonpositive},
                         {"sign_change", c.sign_change},
                         {"convex", c.nonpositive == 0}});
  }
  doc["convexity"] = convexity;
  const bool ok = run.result.status == FlowStatus::converged && (!run.oracle_error || *run.oracle_error <= 1e-3);
  doc["passed"] = ok;
  write_text(config, "flow_summary.json", dump_json(doc));
  return ok ? 0 : 2;
}

int cmd_paper_table(const RunConfig& config) {
  const auto check = check_paper_table();
  const auto rows = paper_table();
  if (config.format == "csv") {
    std::string csv;
    csv_line(csv, "id", "quantity", "relation", "stated", "computed", "abs_delta", "tolerance", "provenance", "flag",
             "note");
    for (const auto& r : rows) {
      csv_line(csv, r.id, r.quantity, to_string(r.relation), r.stated, r.computed, r.deviation(),
               r.relation == Relation::approx ? format_number(r.tolerance) : std::string(), r.provenance,
               r.ok ? "ok" : "discrepancy", r.note);
    }
    write_text(config, "paper_table.csv", csv);
  } else {
    Json doc = envelope(config);
    doc["rows"] = check.detail["rows"];
    doc["discrepancies"] = check.detail["discrepancies"];
    doc["passed"] = check.passed;
    write_text(config, "paper_table.json", dump_json(doc));
  }
  return check.passed ? 0 : 2;
}

int cmd_verify_all(const RunConfig& config) {
  const auto checks = verify_all(config.light);
  const bool passed = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  if (config.format == "csv") {
    std::string csv;
    csv_line(csv, "check", "passed");
    for (const auto& c : checks) csv_line(csv, c.name, c.passed);
    write_text(config, "verify_all.csv", csv);
  } else {
    Json doc = envelope(config);
    Json list = Json::array();
    for (const auto& c : checks) list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    doc["checks"] = list;
    doc["passed"] = passed;
    write_text(config, "verify_all.json", dump_json(doc));
  }
  return passed ? 0 : 2;
}

int run_command(const RunConfig& raw) {
  const RunConfig config = resolve(raw);
  if (config.command == "profile") return cmd_profile(config);
  if (config.command == "curvature") return cmd_curvature(config);
  if (config.command == "ledger") return cmd_ledger(config);
  if (config.command == "flow") return cmd_flow(config);
  if (config.command == "paper-table") return cmd_paper_table(config);
  if (config.command == "verify-all") return cmd_verify_all(config);
  throw ParameterError(fmt::format("unknown command '{}'", config.command));
}

}  // namespace islands
