#include "islands/curve_flow.hpp"

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>
#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "islands/errors.hpp"
#include "islands/numeric.hpp"

namespace islands {

using numeric::pi;

std::string_view to_string(FlowStatus status) {
  switch (status) {
    case FlowStatus::running:
      return "running";
    case FlowStatus::converged:
      return "converged";
    case FlowStatus::max_iterations:
      return "max_iterations";
    case FlowStatus::stagnated:
      return "stagnated";
    case FlowStatus::topology_event:
      return "topology_event";
  }
  return "?";
}

namespace {

double cross(Point a, Point b) { return a.real() * b.imag() - a.imag() * b.real(); }
double dot(Point a, Point b) { return a.real() * b.real() + a.imag() * b.imag(); }

// Length scale over which the ambient factor changes appreciably.
double chart_scale(const ConformalChart& chart, Point z) {
  return chart.half_plane() ? z.imag() : 1.0 - std::abs(z);
}

// Integral over t in [0, 1] of 1 / (1 - |z0 + t delta|^2).
double disk_kernel(Point z0, Point delta) {
  const double r0 = std::abs(z0);
  const double one_minus = (1.0 - r0) * (1.0 + r0);
  const double a = std::norm(delta);
  if (a == 0.0) return 1.0 / one_minus;
  const double b = dot(z0, delta);
  const double c = -one_minus;
  const double sq = std::sqrt(b * b - a * c);
  double t1, t2;  // t1 < 0 < 1 < t2
  if (b >= 0.0) {
    t1 = (-b - sq) / a;
    t2 = c / (a * t1);
  } else {
    t2 = (-b + sq) / a;
    t1 = c / (a * t2);
  }
  return (std::log1p(-1.0 / t1) - std::log1p(-1.0 / t2)) / (2.0 * sq);
}

// Integral over t in [0, 1] of 1 / (y0 + t dy).
double half_plane_kernel(double y0, double dy) {
  const double tau = dy / y0;
  if (std::abs(tau) < 1e-8) return (1.0 - tau * (0.5 - tau / 3.0)) / y0;
  return std::log1p(tau) / (tau * y0);
}

double ambient_chord_length(const ConformalChart& chart, Point z0, Point z1) {
  const Point delta = z1 - z0;
  if (chart.half_plane()) return std::abs(delta) * half_plane_kernel(z0.imag(), delta.imag());
  return 2.0 * std::abs(delta) * disk_kernel(z0, delta);
}

// Contribution of a chord to the line integral of the ambient area primitive.
double ambient_chord_area(const ConformalChart& chart, Point z0, Point z1) {
  const Point delta = z1 - z0;
  if (chart.half_plane()) return delta.real() * half_plane_kernel(z0.imag(), delta.imag());
  return 2.0 * cross(z0, z1) * disk_kernel(z0, delta);
}

struct Piece {
  double t0 = 0.0, t1 = 1.0;
  int island = -1;  // index of the island whose disk contains the piece
};

void add_circle_crossings(const ConformalChart& chart, std::size_t k, Point z0, Point delta, double rho,
                          std::vector<double>& breaks) {
  const Point p = chart.island_center(k);
  Point A0 = z0 - p, A1 = delta, B0, B1;
  if (chart.half_plane()) {
    B0 = z0 - std::conj(p);
    B1 = delta;
  } else {
    B0 = 1.0 - std::conj(p) * z0;
    B1 = -std::conj(p) * delta;
  }
  const double r2 = rho * rho;
  const double qa = std::norm(A1) - r2 * std::norm(B1);
  const double qb = 2.0 * (dot(A0, A1) - r2 * dot(B0, B1));
  const double qc = std::norm(A0) - r2 * std::norm(B0);
  auto keep = [&](double t) {
    if (t > 0.0 && t < 1.0) breaks.push_back(t);
  };
  const double scale = std::max({std::abs(qa), std::abs(qb), std::abs(qc)});
  if (scale == 0.0) return;
  if (std::abs(qa) <= 1e-14 * scale) {
    if (qb != 0.0) keep(-qc / qb);
    return;
  }
  const double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) return;
  const double q = -0.5 * (qb + std::copysign(std::sqrt(disc), qb));
  if (q != 0.0) {
    keep(q / qa);
    keep(qc / q);
  } else {
    keep(0.0);
  }
}

std::vector<Piece> segment_pieces(const ConformalChart& chart, Point z0, Point z1) {
  if (chart.island_count() == 0) return {Piece{}};
  const Point delta = z1 - z0;
  const auto& radial = chart.radial();
  std::vector<double> breaks = {0.0, 1.0};
  for (std::size_t k = 0; k < chart.island_count(); ++k) {
    add_circle_crossings(chart, k, z0, delta, radial.rho_in(), breaks);
    add_circle_crossings(chart, k, z0, delta, radial.rho_out(), breaks);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    Piece pc{breaks[i], breaks[i + 1], -1};
    if (!(pc.t1 > pc.t0)) continue;
    const Point mid = z0 + (0.5 * (pc.t0 + pc.t1)) * delta;
    for (std::size_t k = 0; k < chart.island_count(); ++k) {
      if (std::abs(chart.to_island(k, mid).w) < radial.rho_out()) {
        pc.island = static_cast<int>(k);
        break;
      }
    }
    pieces.push_back(pc);
  }
  return pieces;
}

std::size_t subdivisions(const ConformalChart& chart, Point a, Point b) {
  const double scale = std::min(chart_scale(chart, a), chart_scale(chart, b));
  const double ratio = std::abs(b - a) / (0.25 * scale);
  if (!(ratio < 1e6)) return 1000000;
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(ratio)));
}

// Change of arg(w_k) from za to zb along the chord, with the chord split until
// each part turns by well under half a revolution.
double arg_increment(const ConformalChart& chart, std::size_t k, Point za, Point zb, int depth = 0) {
  const Point wa = chart.to_island(k, za).w;
  const Point wb = chart.to_island(k, zb).w;
  if (depth > 40 || std::abs(wb - wa) <= 0.5 * std::min(std::abs(wa), std::abs(wb))) {
    return std::arg(wb / wa);
  }
  const Point zm = 0.5 * (za + zb);
  return arg_increment(chart, k, za, zm, depth + 1) + arg_increment(chart, k, zm, zb, depth + 1);
}

struct SegmentMeasure {
  double length = 0.0;
  double area = 0.0;
};

SegmentMeasure segment_measure(const ConformalChart& chart, Point z0, Point z1, bool want_length, bool want_area) {
  SegmentMeasure out;
  const Point delta = z1 - z0;
  if (want_area) out.area = ambient_chord_area(chart, z0, z1);
  if (chart.island_count() == 0) {
    if (want_length) out.length = ambient_chord_length(chart, z0, z1);
    return out;
  }
  const auto& radial = chart.radial();
  const auto& rule = numeric::unit_gauss16();
  for (const auto& pc : segment_pieces(chart, z0, z1)) {
    const Point a = z0 + pc.t0 * delta, b = z0 + pc.t1 * delta;
    if (pc.island < 0) {
      if (want_length) out.length += ambient_chord_length(chart, a, b);
    } else {
      const auto k = static_cast<std::size_t>(pc.island);
      const std::size_t n = subdivisions(chart, a, b);
      const Point sub = (b - a) / static_cast<double>(n);
      for (std::size_t j = 0; j < n; ++j) {
        const Point s0 = a + static_cast<double>(j) * sub;
        for (std::size_t g = 0; g < rule.nodes.size(); ++g) {
          const Point z = s0 + rule.nodes[g] * sub;
          if (want_length) out.length += rule.weights[g] * chart.factor(z).lambda * std::abs(sub);
          if (want_area) {
            const auto ip = chart.to_island(k, z);
            const double kernel = radial.area_kernel(std::abs(ip.w));
            out.area += rule.weights[g] * kernel * (std::conj(ip.w) * ip.dw * sub).imag();
          }
        }
      }
    }
    if (want_area) {
      for (std::size_t k = 0; k < chart.island_count(); ++k) {
        if (static_cast<int>(k) == pc.island) continue;
        out.area += radial.area_excess() * arg_increment(chart, k, a, b);
      }
    }
  }
  return out;
}

void check_domain(const ConformalChart& chart, const Polygon& polygon) {
  for (const auto& z : polygon) {
    if (!chart.in_domain(z)) {
      throw DomainError(fmt::format("vertex ({}, {}) lies outside the chart", z.real(), z.imag()));
    }
  }
}

}  // namespace

double polygon_length(const ConformalChart& chart, const Polygon& polygon) {
  check_domain(chart, polygon);
  double total = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) total += segment_measure(chart, polygon[i], polygon[(i + 1) % n], true, false).length;
  return total;
}

double polygon_area(const ConformalChart& chart, const Polygon& polygon) {
  check_domain(chart, polygon);
  double total = 0.0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) total += segment_measure(chart, polygon[i], polygon[(i + 1) % n], false, true).area;
  return total;
}

double curve_length(const ConformalChart& chart, const MultiCurve& curve) {
  validate(curve);
  double total = 0.0;
  for (const auto& c : curve.components) total += polygon_length(chart, c);
  return total;
}

double enclosed_area(const ConformalChart& chart, const MultiCurve& curve) {
  validate(curve);
  double total = 0.0;
  for (const auto& c : curve.components) total += polygon_area(chart, c);
  return total;
}

CurveGradients curve_gradients(const ConformalChart& chart, const MultiCurve& curve) {
  CurveGradients g;
  const auto& rule = numeric::unit_gauss16();
  for (const auto& poly : curve.components) {
    const std::size_t n = poly.size();
    std::vector<Point> gl(n), ga(n);
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t j = (i + 1) % n;
      const Point z0 = poly[i], delta = poly[j] - poly[i];
      const double len = std::abs(delta);
      if (len == 0.0) continue;
      const Point unit = delta / len;
      const Point normal(delta.imag(), -delta.real());
      for (const auto& pc : segment_pieces(chart, poly[i], poly[j])) {
        const Point a = z0 + pc.t0 * delta, b = z0 + pc.t1 * delta;
        const std::size_t m = subdivisions(chart, a, b);
        const double dt = (pc.t1 - pc.t0) / static_cast<double>(m);
        for (std::size_t s = 0; s < m; ++s) {
          const double ts = pc.t0 + static_cast<double>(s) * dt;
          for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double t = ts + rule.nodes[q] * dt;
            const double wq = rule.weights[q] * dt;
            const Factor f = chart.factor(z0 + t * delta);
            gl[i] += wq * ((1.0 - t) * len * f.grad - f.lambda * unit);
            gl[j] += wq * (t * len * f.grad + f.lambda * unit);
            const double l2 = f.lambda * f.lambda;
            ga[i] += wq * l2 * (1.0 - t) * normal;
            ga[j] += wq * l2 * t * normal;
          }
        }
      }
    }
    g.length.push_back(std::move(gl));
    g.area.push_back(std::move(ga));
  }
  return g;
}

namespace {

std::vector<std::vector<double>> curvatures_from(const CurveGradients& g) {
  std::vector<std::vector<double>> out;
  for (std::size_t c = 0; c < g.length.size(); ++c) {
    std::vector<double> k(g.length[c].size());
    for (std::size_t i = 0; i < k.size(); ++i) {
      const Point a = g.area[c][i];
      k[i] = dot(g.length[c][i], a) / std::norm(a);
    }
    out.push_back(std::move(k));
  }
  return out;
}

struct Spread {
  double absolute = 0.0;
  double relative = 0.0;
  std::vector<double> means;
};

Spread curvature_spread(const std::vector<std::vector<double>>& ks) {
  Spread s;
  for (const auto& k : ks) {
    double mean = 0.0;
    for (double v : k) mean += v;
    mean /= static_cast<double>(k.size());
    double dev = 0.0;
    for (double v : k) dev = std::max(dev, std::abs(v - mean));
    s.means.push_back(mean);
    s.absolute = std::max(s.absolute, dev);
    s.relative = std::max(s.relative, dev / std::abs(mean));
  }
  return s;
}

using Field = std::vector<std::vector<Point>>;
using Scalars = std::vector<std::vector<double>>;

// Normal components of the first variations; vertices only move along unit.
struct NormalFrame {
  Field unit;
  Scalars length, area;
};

NormalFrame normal_frame(const CurveGradients& g) {
  NormalFrame f;
  for (std::size_t c = 0; c < g.area.size(); ++c) {
    const std::size_t n = g.area[c].size();
    std::vector<Point> unit(n);
    std::vector<double> gl(n), ga(n);
    for (std::size_t i = 0; i < n; ++i) {
      ga[i] = std::abs(g.area[c][i]);
      unit[i] = g.area[c][i] / ga[i];
      gl[i] = dot(g.length[c][i], unit[i]);
    }
    f.unit.push_back(std::move(unit));
    f.length.push_back(std::move(gl));
    f.area.push_back(std::move(ga));
  }
  return f;
}

double inner(const Scalars& a, const Scalars& b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t i = 0; i < a[c].size(); ++i) acc += a[c][i] * b[c][i];
  }
  return acc;
}

Field along(const NormalFrame& f, const Scalars& amount) {
  Field out(amount.size());
  for (std::size_t c = 0; c < amount.size(); ++c) {
    out[c].resize(amount[c].size());
    for (std::size_t i = 0; i < amount[c].size(); ++i) out[c][i] = amount[c][i] * f.unit[c][i];
  }
  return out;
}

double inner(const Field& a, const Field& b) {
  double acc = 0.0;
  for (std::size_t c = 0; c < a.size(); ++c) {
    for (std::size_t i = 0; i < a[c].size(); ++i) acc += dot(a[c][i], b[c][i]);
  }
  return acc;
}

// Discrete H^1 inner product on metric normal displacements D = lambda * phi,
// one cyclic system per component.
class Preconditioner {
 public:
  Preconditioner(const ConformalChart& chart, const MultiCurve& curve) {
    for (const auto& poly : curve.components) {
      const std::size_t n = poly.size();
      std::vector<double> ds(n), lam_v(n);
      std::vector<Eigen::Triplet<double>> trip;
      double metric_length = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const Point a = poly[i], b = poly[(i + 1) % n];
        lam_v[i] = chart.factor(a).lambda;
        ds[i] = chart.factor(0.5 * (a + b)).lambda * std::abs(b - a);
        metric_length += ds[i];
        const double k = 1.0 / ds[i];
        const int ii = static_cast<int>(i), jj = static_cast<int>((i + 1) % n);
        trip.emplace_back(ii, ii, k);
        trip.emplace_back(jj, jj, k);
        trip.emplace_back(ii, jj, -k);
        trip.emplace_back(jj, ii, -k);
      }
      const double freq = 2.0 * pi / metric_length;
      for (std::size_t i = 0; i < n; ++i) {
        const int ii = static_cast<int>(i);
        trip.emplace_back(ii, ii, 0.5 * (ds[i] + ds[(i + n - 1) % n]) * freq * freq);
      }
      Eigen::SparseMatrix<double> m(static_cast<int>(n), static_cast<int>(n));
      m.setFromTriplets(trip.begin(), trip.end());
      solvers_.emplace_back(std::make_unique<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>(m));
      if (solvers_.back()->info() != Eigen::Success) throw NumericError("preconditioner factorization failed");
      lambda_.push_back(std::move(lam_v));
    }
  }

  // Chart-space gradient in, chart-space normal displacement out.
  Scalars apply(const Scalars& g) const {
    Scalars out(g.size());
    for (std::size_t c = 0; c < g.size(); ++c) {
      const auto n = static_cast<Eigen::Index>(g[c].size());
      Eigen::VectorXd rhs(n);
      for (Eigen::Index i = 0; i < n; ++i) rhs[i] = g[c][i] / lambda_[c][i];
      const Eigen::VectorXd x = solvers_[c]->solve(rhs);
      out[c].resize(g[c].size());
      for (Eigen::Index i = 0; i < n; ++i) out[c][i] = x[i] / lambda_[c][i];
    }
    return out;
  }

 private:
  std::vector<std::unique_ptr<Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>>>> solvers_;
  std::vector<std::vector<double>> lambda_;
};

// Shortens individual moves so no vertex jumps over a whole collar in one step.
void stop_at_collars(const ConformalChart& chart, const MultiCurve& curve, Field& move) {
  if (chart.island_count() == 0) return;
  const auto& radial = chart.radial();
  std::vector<double> hits;
  for (std::size_t c = 0; c < move.size(); ++c) {
    for (std::size_t i = 0; i < move[c].size(); ++i) {
      const Point z = curve.components[c][i];
      hits.clear();
      for (std::size_t k = 0; k < chart.island_count(); ++k) {
        add_circle_crossings(chart, k, z, move[c][i], radial.rho_in(), hits);
        add_circle_crossings(chart, k, z, move[c][i], radial.rho_out(), hits);
      }
      double first = 1.0;
      for (double t : hits) {
        if (t > 1e-9) first = std::min(first, t);
      }
      move[c][i] *= first;
    }
  }
}

void axpy(MultiCurve& curve, double s, const Field& v) {
  for (std::size_t c = 0; c < v.size(); ++c) {
    for (std::size_t i = 0; i < v[c].size(); ++i) curve.components[c][i] += s * v[c][i];
  }
}

bool inside_chart(const ConformalChart& chart, const MultiCurve& curve) {
  for (const auto& poly : curve.components) {
    for (const auto& z : poly) {
      if (!chart.in_domain(z)) return false;
    }
  }
  return true;
}

double total_area(const ConformalChart& chart, const MultiCurve& curve) {
  double a = 0.0;
  for (const auto& poly : curve.components) a += polygon_area(chart, poly);
  return a;
}

double total_length(const ConformalChart& chart, const MultiCurve& curve) {
  double l = 0.0;
  for (const auto& poly : curve.components) l += polygon_length(chart, poly);
  return l;
}

// Newton-like correction along a fixed direction; returns the final relative
// area error, or infinity if the curve left the chart.
double correct_area(const ConformalChart& chart, MultiCurve& curve, double target, const Field& grad_area,
                    const Field& direction, double rel_tol) {
  const double slope = inner(grad_area, direction);
  if (!(slope > 0.0)) return std::numeric_limits<double>::infinity();
  double err = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    if (!inside_chart(chart, curve)) return std::numeric_limits<double>::infinity();
    const double area = total_area(chart, curve);
    err = (target - area) / target;
    if (std::abs(err) <= rel_tol) break;
    axpy(curve, (target - area) / slope, direction);
  }
  if (!inside_chart(chart, curve)) return std::numeric_limits<double>::infinity();
  return std::abs(err);
}

double min_adjacent_edge(const Polygon& poly, std::size_t i) {
  const std::size_t n = poly.size();
  return std::min(std::abs(poly[(i + 1) % n] - poly[i]), std::abs(poly[i] - poly[(i + n - 1) % n]));
}

// Resample each component at equal metric arc length along its chords.
MultiCurve redistribute(const ConformalChart& chart, const MultiCurve& curve) {
  MultiCurve out;
  for (const auto& poly : curve.components) {
    const std::size_t n = poly.size();
    std::vector<double> cum(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      cum[i + 1] = cum[i] + segment_measure(chart, poly[i], poly[(i + 1) % n], true, false).length;
    }
    const double total = cum[n];
    Polygon fresh(n);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < n; ++k) {
      const double target = total * static_cast<double>(k) / static_cast<double>(n);
      while (seg + 1 < n && cum[seg + 1] <= target) ++seg;
      const double span = cum[seg + 1] - cum[seg];
      const double t = span > 0.0 ? (target - cum[seg]) / span : 0.0;
      fresh[k] = poly[seg] + t * (poly[(seg + 1) % n] - poly[seg]);
    }
    out.components.push_back(std::move(fresh));
  }
  return out;
}

void refresh_diagnostics(const ConformalChart& chart, FlowState& state, const CurveGradients& g) {
  const auto spread = curvature_spread(curvatures_from(g));
  state.kg_spread = spread.absolute;
  state.kg_mean = spread.means;
  (void)chart;
}

}  // namespace

std::vector<std::vector<double>> vertex_curvatures(const ConformalChart& chart, const MultiCurve& curve) {
  return curvatures_from(curve_gradients(chart, curve));
}

FlowState make_flow_state(const ConformalChart& chart, MultiCurve init, double area_target, const FlowParams& params) {
  if (!(area_target > 0.0)) throw ParameterError("area target must be positive");
  validate(init);
  FlowState state;
  state.area_target = area_target;
  state.step = params.initial_step;
  const double area0 = total_area(chart, init);
  if (std::abs(area0 - area_target) > params.init_area_tol * area_target) {
    throw ParameterError(fmt::format("initial area {:.6g} is not within {:.0f}% of the target {:.6g}", area0,
                                     100.0 * params.init_area_tol, area_target));
  }
  // Project onto the constraint in small increments along the area gradient.
  for (int round = 0; round < 50; ++round) {
    const double area = total_area(chart, init);
    if (std::abs(area - area_target) <= params.correction_rel_tol * area_target) break;
    const auto g = curve_gradients(chart, init);
    const Preconditioner pre(chart, init);
    const auto frame = normal_frame(g);
    const Field dir = along(frame, pre.apply(frame.area));
    const double slope = inner(g.area, dir);
    double scale = (area_target - area) / slope;
    // keep each vertex move below a quarter of its shortest edge
    double worst = 0.0;
    for (std::size_t c = 0; c < dir.size(); ++c) {
      for (std::size_t i = 0; i < dir[c].size(); ++i) {
        worst = std::max(worst, std::abs(scale) * std::abs(dir[c][i]) / min_adjacent_edge(init.components[c], i));
      }
    }
    if (worst > 0.25) scale *= 0.25 / worst;
    MultiCurve trial = init;
    axpy(trial, scale, dir);
    if (!inside_chart(chart, trial)) throw GeometryError("area projection left the chart");
    init = std::move(trial);
  }
  validate(init);
  state.curve = std::move(init);
  state.area = total_area(chart, state.curve);
  state.length = total_length(chart, state.curve);
  if (std::abs(state.area - area_target) > params.area_rel_tol * area_target) {
    throw GeometryError("initial curve could not be projected onto the area constraint");
  }
  refresh_diagnostics(chart, state, curve_gradients(chart, state.curve));
  return state;
}

StepReport flow_step(const ConformalChart& chart, FlowState& state, const FlowParams& params) {
  StepReport report;
  ++state.iteration;
  const auto g = curve_gradients(chart, state.curve);
  refresh_diagnostics(chart, state, g);
  const Preconditioner pre(chart, state.curve);
  const auto frame = normal_frame(g);
  const Scalars vl = pre.apply(frame.length);
  const Scalars va = pre.apply(frame.area);
  const double mult = inner(frame.length, va) / inner(frame.area, va);
  Scalars amount(vl.size());
  double worst = 0.0;
  for (std::size_t c = 0; c < vl.size(); ++c) {
    amount[c].resize(vl[c].size());
    for (std::size_t i = 0; i < vl[c].size(); ++i) {
      amount[c][i] = -(vl[c][i] - mult * va[c][i]);
      worst = std::max(worst, std::abs(amount[c][i]) / min_adjacent_edge(state.curve.components[c], i));
    }
  }
  if (worst == 0.0) {
    report.accepted = true;
    ++state.accepted;
    return report;
  }
  const Field dir = along(frame, amount);
  const Field area_dir = along(frame, va);
  const double cap = 0.25 / worst;

  while (true) {
    const double tau = std::min(state.step, cap);
    MultiCurve trial = state.curve;
    Field move = dir;
    for (auto& comp : move) {
      for (auto& v : comp) v *= tau;
    }
    stop_at_collars(chart, state.curve, move);
    axpy(trial, 1.0, move);
    bool ok = inside_chart(chart, trial);
    if (ok) {
      const double err = correct_area(chart, trial, state.area_target, g.area, area_dir, params.correction_rel_tol);
      ok = err <= params.area_rel_tol;
    }
    if (ok) ok = !find_intersection(trial).has_value();
    double length = 0.0;
    if (ok) {
      length = total_length(chart, trial);
      ok = length - state.length <= params.length_slack * state.length;
    }
    if (ok) {
      state.curve = std::move(trial);
      state.length = length;
      state.area = total_area(chart, state.curve);
      state.step = std::min(1.5 * std::max(state.step, tau), 1e6);
      report.accepted = true;
      ++state.accepted;
      break;
    }
    state.step = 0.5 * tau;
    if (state.step < params.min_step) {
      report.status = FlowStatus::stagnated;
      report.event = fmt::format("step size fell below {:.3g} at iteration {}", params.min_step, state.iteration);
      return report;
    }
  }

  if (params.redistribute_every > 0 && state.accepted % params.redistribute_every == 0) {
    MultiCurve fresh = redistribute(chart, state.curve);
    if (inside_chart(chart, fresh) && !find_intersection(fresh)) {
      const auto gf = curve_gradients(chart, fresh);
      const Preconditioner pf(chart, fresh);
      const auto ff = normal_frame(gf);
      const double err = correct_area(chart, fresh, state.area_target, gf.area, along(ff, pf.apply(ff.area)),
                                      params.correction_rel_tol);
      if (err <= params.area_rel_tol && !find_intersection(fresh)) {
        const double length = total_length(chart, fresh);
        if (length <= state.length) {
          state.curve = std::move(fresh);
          state.length = length;
          state.area = total_area(chart, state.curve);
        }
      }
    }
  }

  if (const auto hit = find_close_approach(state.curve, params.pinch_factor, 3)) {
    report.status = FlowStatus::topology_event;
    report.event = fmt::format("segments {}:{} and {}:{} came within {:.3g} (chart units) at iteration {}",
                               hit->a.component, hit->a.segment, hit->b.component, hit->b.segment, hit->distance,
                               state.iteration);
  }
  return report;
}

FlowResult run_flow(const ConformalChart& chart, MultiCurve init, double area_target, const FlowParams& params) {
  FlowResult result;
  result.state = make_flow_state(chart, std::move(init), area_target, params);
  auto& st = result.state;
  std::vector<double> history = {st.length};
  auto record = [&]() {
    result.trace.push_back({st.iteration, st.length, st.area, st.kg_spread});
    result.max_area_deviation =
        std::max(result.max_area_deviation, std::abs(st.area - st.area_target) / st.area_target);
  };
  record();
  double prev_length = st.length;
  while (true) {
    if (st.iteration >= params.max_iterations) {
      result.status = FlowStatus::max_iterations;
      break;
    }
    const auto rep = flow_step(chart, st, params);
    if (rep.accepted) {
      result.max_length_increase = std::max(result.max_length_increase, (st.length - prev_length) / prev_length);
      prev_length = st.length;
      history.push_back(st.length);
      record();
    }
    if (rep.status != FlowStatus::running) {
      result.status = rep.status;
      result.event = rep.event;
      break;
    }
    if (history.size() > params.window) {
      const double old = history[history.size() - 1 - params.window];
      if (old - st.length < static_cast<double>(params.window) * params.convergence_rel * st.length) {
        result.status = FlowStatus::converged;
        break;
      }
    }
  }
  const auto spread = curvature_spread(vertex_curvatures(chart, st.curve));
  st.kg_spread = spread.absolute;
  st.kg_mean = spread.means;
  result.kg_relative_spread = spread.relative;
  return result;
}

std::vector<ComponentConvexity> convexity_diagnostic(const ConformalChart& chart, const MultiCurve& curve) {
  const auto ks = vertex_curvatures(chart, curve);
  std::vector<ComponentConvexity> out;
  for (std::size_t c = 0; c < ks.size(); ++c) {
    ComponentConvexity r;
    r.component = c;
    r.min_curvature = *std::min_element(ks[c].begin(), ks[c].end());
    r.max_curvature = *std::max_element(ks[c].begin(), ks[c].end());
    for (double k : ks[c]) r.nonpositive += k <= 0.0 ? 1 : 0;
    r.sign_change = r.nonpositive > 0;
    out.push_back(r);
  }
  return out;
}

}  // namespace islands
