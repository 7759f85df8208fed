#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace islands {

// Value and first two derivatives of a warp function, together with the
// ratios h'/h and h''/h. The ratios stay finite where h itself overflows.
struct Jet {
  double h = 0.0;
  double dh = 0.0;
  double d2h = 0.0;
  double dh_over_h = 0.0;
  double d2h_over_h = 0.0;
};

enum class Piece { flat, band, hyperbolic };

std::string_view to_string(Piece piece);

struct ProfileParams {
  double R = 0.0;
  double C = 0.0;                       // R - asinh(R)
  double delta = 0.0;                   // 1 / (4 pi R sinh 2R)
  double log_delta = 0.0;
  std::optional<double> delta_override;

  // Half-width actually used by the band.
  double width() const { return delta_override.value_or(delta); }
};

// Quintic transition piece in the scaled coordinate s = (r - R) / width.
// Writing h = R + width * q(s), the derivatives are h' = q'(s) and
// h'' = q''(s) / width. q'' is kept in the form
//   q''(s) = (1 - s^2)(a + b s) + e (1 + s) / 2,
// which pins q''(-1) = 0 and q''(1) = e. Evaluation uses expansions anchored
// at the nearer endpoint so the tiny endpoint curvatures survive rounding.
class BandInterpolant {
 public:
  BandInterpolant() = default;
  BandInterpolant(double R, double width);

  struct Values {
    double q = 0.0;
    double dq = 0.0;
    double d2q = 0.0;
  };

  Values eval(double s) const;

  // Monomial coefficients c0..c5 of q(s) = sum c_k s^k.
  std::array<double, 6> coefficients() const;

  // Boundary data (q, q', q'') expected at s = +1.
  Values right_boundary() const { return {q1_, m_, e_}; }

  double shape_a() const { return a_; }
  double shape_b() const { return b_; }

 private:
  double a_ = 0.0, b_ = 0.0, e_ = 0.0, m_ = 0.0, q1_ = 0.0;
  double c1_ = 0.0, c2_ = 0.0, c3_ = 0.0;  // left expansion in u = s + 1
  double d1_ = 0.0, d2_ = 0.0, d3_ = 0.0;  // right expansion in v = 1 - s
};

// Band sample with h reported as an offset from R.
struct BandJet {
  double s = 0.0;
  double offset = 0.0;  // h - R
  double dh = 0.0;
  double d2h = 0.0;
  double h = 0.0;       // R + offset in working precision
};

class RadialProfile {
 public:
  const ProfileParams& params() const { return params_; }
  double R() const { return params_.R; }
  double C() const { return params_.C; }
  double width() const { return params_.width(); }
  const BandInterpolant& band() const { return band_; }

  // False when R - width and R + width round to R; ambient radii then cannot
  // address band interior points and must go through eval_band.
  bool band_resolvable() const;

  Piece piece_at(double r) const;

  // Piecewise evaluation at an ambient radius.
  Jet eval(double r) const;

  // Band evaluation at scaled coordinate s in [-1, 1].
  BandJet eval_band(double s) const;
  Jet band_jet(double s) const;

  // Jet of the hyperbolic piece at distance t past its start (r = R + width + t).
  Jet hyperbolic_jet(double t) const;

  // asinh(R) + width: the argument of sinh at the start of the hyperbolic piece.
  double hyperbolic_start() const { return asinh_R_ + params_.width(); }
  double asinh_R() const { return asinh_R_; }

 private:
  friend RadialProfile make_profile(double R, std::optional<double> delta_override);
  ProfileParams params_;
  double asinh_R_ = 0.0;
  BandInterpolant band_;
};

// Throws DomainError for R <= 1 or an override outside (0, delta], and
// ConstructionError if the band fails the convexity scan.
RadialProfile make_profile(double R, std::optional<double> delta_override = std::nullopt);

struct PieceMinimum {
  Piece piece = Piece::flat;
  double min_d2h = 0.0;
  double location = 0.0;  // r, or s for the band
  std::size_t samples = 0;
};

struct ConvexityReport {
  std::array<PieceMinimum, 3> pieces;
  double min_d2h = 0.0;
  Piece argmin_piece = Piece::flat;
  double argmin_location = 0.0;
  double tolerance = 0.0;  // violations are d2h < -tolerance
  bool convex = false;
};

// Samples the flat piece, the band (in s) and the hyperbolic piece up to 3R.
ConvexityReport convexity_scan(const RadialProfile& profile, std::size_t n_samples);

}  // namespace islands
