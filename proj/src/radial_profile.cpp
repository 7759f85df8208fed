#include "islands/radial_profile.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

#include "islands/errors.hpp"
#include "islands/numeric.hpp"

namespace islands {

std::string_view to_string(Piece piece) {
  switch (piece) {
    case Piece::flat:
      return "flat";
    case Piece::band:
      return "band";
    case Piece::hyperbolic:
      return "hyperbolic";
  }
  return "?";
}

BandInterpolant::BandInterpolant(double R, double width) {
  const double S = std::sqrt(1.0 + R * R);
  const double ch = std::cosh(width);
  const double sh = std::sinh(width);
  const double sinhc = width > 0.0 ? sh / width : 1.0;
  const double coshm1_over = 2.0 * std::pow(std::sinh(0.5 * width), 2) / width;

  // Right boundary data of h = sinh(asinh R + width) in band units.
  m_ = S * ch + R * sh;
  q1_ = R * coshm1_over + S * sinhc;
  e_ = width * (R * ch + S * sh);
  const double m_minus_q1 =
      S * numeric::cosh_minus_sinhc(width) + R * numeric::sinh_minus_coshm1_over(width);

  a_ = 0.75 * (m_ - 1.0 - e_);
  b_ = 3.75 * (m_minus_q1 - e_ / 3.0);

  const double A = a_ - b_;
  c1_ = 2.0 * A + 0.5 * e_;
  c2_ = 2.0 * b_ - A;
  c3_ = -b_;

  const double B = a_ + b_;
  d1_ = 2.0 * B - 0.5 * e_;
  d2_ = -B - 2.0 * b_;
  d3_ = b_;
}

BandInterpolant::Values BandInterpolant::eval(double s) const {
  if (s <= 0.0) {
    const double u = s + 1.0;
    const double u2 = u * u;
    Values v;
    v.d2q = u * (c1_ + u * (c2_ + u * c3_));
    v.dq = 1.0 + u2 * (c1_ / 2.0 + u * (c2_ / 3.0 + u * c3_ / 4.0));
    v.q = -1.0 + u + u2 * u * (c1_ / 6.0 + u * (c2_ / 12.0 + u * c3_ / 20.0));
    return v;
  }
  const double v = 1.0 - s;
  const double v2 = v * v;
  Values out;
  out.d2q = e_ + v * (d1_ + v * (d2_ + v * d3_));
  out.dq = m_ - v * (e_ + v * (d1_ / 2.0 + v * (d2_ / 3.0 + v * d3_ / 4.0)));
  out.q = q1_ - m_ * v + v2 * (e_ / 2.0 + v * (d1_ / 6.0 + v * (d2_ / 12.0 + v * d3_ / 20.0)));
  return out;
}

std::array<double, 6> BandInterpolant::coefficients() const {
  // Expand the left form in u = s + 1 into powers of s.
  const std::array<double, 6> in_u = {-1.0, 1.0, 0.0, c1_ / 6.0, c2_ / 12.0, c3_ / 20.0};
  std::array<double, 6> out{};
  for (int k = 0; k < 6; ++k) {
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      out[j] += in_u[k] * binom;  // C(k, j) * s^j * 1^(k-j)
      binom = binom * (k - j) / (j + 1);
    }
  }
  return out;
}

bool RadialProfile::band_resolvable() const {
  const double w = width();
  return (R() - w) < R() && (R() + w) > R();
}

Piece RadialProfile::piece_at(double r) const {
  const double w = width();
  if (r <= R() - w) return Piece::flat;
  if (r >= R() + w) return Piece::hyperbolic;
  return Piece::band;
}

Jet RadialProfile::hyperbolic_jet(double t) const {
  const double x = hyperbolic_start() + t;
  Jet j;
  j.h = std::sinh(x);
  j.dh = std::cosh(x);
  j.d2h = j.h;
  j.dh_over_h = 1.0 / std::tanh(x);
  j.d2h_over_h = 1.0;
  return j;
}

Jet RadialProfile::eval(double r) const {
  if (r < 0.0) throw DomainError(fmt::format("radius must be non-negative, got {}", r));
  switch (piece_at(r)) {
    case Piece::flat: {
      Jet j;
      j.h = r;
      j.dh = 1.0;
      j.d2h = 0.0;
      j.dh_over_h = r > 0.0 ? 1.0 / r : std::numeric_limits<double>::infinity();
      j.d2h_over_h = 0.0;
      return j;
    }
    case Piece::band:
      return band_jet((r - R()) / width());
    case Piece::hyperbolic: {
      // sinh((r - R) + asinh R) avoids forming r - C.
      const double x = (r - R()) + asinh_R_;
      Jet j;
      j.h = std::sinh(x);
      j.dh = std::cosh(x);
      j.d2h = j.h;
      j.dh_over_h = 1.0 / std::tanh(x);
      j.d2h_over_h = 1.0;
      return j;
    }
  }
  return {};
}

BandJet RadialProfile::eval_band(double s) const {
  if (!(s >= -1.0 && s <= 1.0)) {
    throw DomainError(fmt::format("band coordinate must lie in [-1, 1], got {}", s));
  }
  const auto v = band_.eval(s);
  BandJet b;
  b.s = s;
  b.offset = width() * v.q;
  b.dh = v.dq;
  b.d2h = v.d2q / width();
  b.h = R() + b.offset;
  return b;
}

Jet RadialProfile::band_jet(double s) const {
  const auto b = eval_band(s);
  Jet j;
  j.h = b.h;
  j.dh = b.dh;
  j.d2h = b.d2h;
  j.dh_over_h = b.dh / b.h;
  j.d2h_over_h = b.d2h / b.h;
  return j;
}

namespace {

double convexity_tolerance(const RadialProfile& p) {
  return 1e-9 * std::max(1.0, std::sinh(p.hyperbolic_start()));
}

}  // namespace

RadialProfile make_profile(double R, std::optional<double> delta_override) {
  if (!(R > 1.0)) {
    throw DomainError(fmt::format(
        "flat radius R = {} is not admissible: the band half-width is below R only for R > 1", R));
  }
  RadialProfile p;
  p.params_.R = R;
  p.asinh_R_ = std::asinh(R);
  p.params_.C = R - p.asinh_R_;
  // delta = exp(-log(4 pi R) - log sinh(2R)); finite well past R = 300.
  p.params_.log_delta = -std::log(4.0 * numeric::pi * R) - numeric::log_sinh(2.0 * R);
  p.params_.delta = std::exp(p.params_.log_delta);
  if (delta_override) {
    const double w = *delta_override;
    if (!(w > 0.0 && w <= p.params_.delta)) {
      throw DomainError(fmt::format("delta override {} must lie in (0, {}]", w, p.params_.delta));
    }
    p.params_.delta_override = w;
  }
  if (!(p.params_.delta < R)) throw DomainError("band half-width must be below R");

  p.band_ = BandInterpolant(R, p.width());

  const double tol = convexity_tolerance(p) * p.width();  // in band units of q''
  constexpr int kChecks = 4001;
  for (int i = 0; i < kChecks; ++i) {
    const double s = -1.0 + 2.0 * i / (kChecks - 1);
    const double d2q = p.band_.eval(s).d2q;
    if (d2q < -tol) {
      throw ConstructionError(
          fmt::format("transition band is not convex: q''({:.17g}) = {:.17g}", s, d2q));
    }
  }
  return p;
}

ConvexityReport convexity_scan(const RadialProfile& profile, std::size_t n_samples) {
  if (n_samples < 3) throw DomainError("convexity_scan needs at least 3 samples");
  const std::size_t per_piece = std::max<std::size_t>(1, n_samples / 3);
  const double R = profile.R();
  const double w = profile.width();

  ConvexityReport report;
  report.tolerance = convexity_tolerance(profile);

  auto record = [](PieceMinimum& pm, double value, double where) {
    if (pm.samples == 0 || value < pm.min_d2h) {
      pm.min_d2h = value;
      pm.location = where;
    }
    ++pm.samples;
  };

  PieceMinimum& flat = report.pieces[0];
  PieceMinimum& band = report.pieces[1];
  PieceMinimum& hyp = report.pieces[2];
  flat.piece = Piece::flat;
  band.piece = Piece::band;
  hyp.piece = Piece::hyperbolic;

  const double flat_end = R - w;
  for (std::size_t i = 0; i < per_piece; ++i) {
    const double r = flat_end * static_cast<double>(i) / static_cast<double>(per_piece - (per_piece > 1));
    record(flat, profile.eval(std::min(r, flat_end)).d2h, r);
  }
  for (std::size_t i = 0; i < per_piece; ++i) {
    const double s = per_piece > 1 ? -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(per_piece - 1) : 0.0;
    record(band, profile.eval_band(s).d2h, s);
  }
  const double r_max = 3.0 * R;
  for (std::size_t i = 0; i < per_piece; ++i) {
    const double t = per_piece > 1 ? (r_max - R) * static_cast<double>(i) / static_cast<double>(per_piece - 1) : 0.0;
    record(hyp, profile.hyperbolic_jet(t).d2h, R + w + t);
  }

  report.min_d2h = flat.min_d2h;
  report.argmin_piece = Piece::flat;
  report.argmin_location = flat.location;
  for (const auto& pm : report.pieces) {
    if (pm.min_d2h < report.min_d2h) {
      report.min_d2h = pm.min_d2h;
      report.argmin_piece = pm.piece;
      report.argmin_location = pm.location;
    }
  }
  report.convex = report.min_d2h >= -report.tolerance;
  return report;
}

}  // namespace islands
