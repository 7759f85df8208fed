#pragma once

namespace islands {

struct SpaceForm {
  int kappa = -1;  // 0 or -1
  int dim = 2;     // 2 or 3

  static SpaceForm euclidean(int dim) { return make(0, dim); }
  static SpaceForm hyperbolic(int dim) { return make(-1, dim); }
  static SpaceForm make(int kappa, int dim);
};

struct BallGeometry {
  double radius = 0.0;
  double enclosed = 0.0;  // area or volume
  double boundary = 0.0;  // length or area
};

BallGeometry ball_from_radius(const SpaceForm& form, double r);
double enclosed_from_radius(const SpaceForm& form, double r);
double boundary_from_radius(const SpaceForm& form, double r);

// Inverse of enclosed_from_radius, to 1e-12 relative or better.
double radius_from_enclosed(const SpaceForm& form, double enclosed);

double isoperimetric_min_boundary(const SpaceForm& form, double enclosed);

// Curved (free) part of the boundary of a half-ball of the given measure in
// the hyperbolic form.
double half_space_bound(const SpaceForm& form, double enclosed);

}  // namespace islands
