#pragma once

#include <span>

namespace beamsim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Horizontal angle in degrees, kept normalized to [0, 360). Bearings are
// measured from the vehicle heading, increasing clockwise; the same
// orientation is used everywhere (scheduling order, sector indexing).
class Bearing {
 public:
  Bearing() = default;
  // Accepts any finite angle and normalizes it.
  static Bearing from_degrees(double raw_degrees);

  double degrees() const { return degrees_; }

  friend bool operator==(Bearing a, Bearing b) { return a.degrees_ == b.degrees_; }
  friend bool operator<(Bearing a, Bearing b) { return a.degrees_ < b.degrees_; }

 private:
  double degrees_ = 0.0;
};

// Normalizes an angle into [0, 360); 360 maps to 0. Throws InvalidArgument
// on non-finite input.
Bearing normalize_bearing(double raw_degrees);

// Angle of the vector from->to, measured clockwise from `heading`.
// Throws DegenerateGeometry when the positions coincide.
Bearing bearing_between(Vec2 from, Vec2 to, Bearing heading);

// Smallest absolute angular separation between two bearings, in [0, 180].
double angular_distance_deg(Bearing a, Bearing b);

// Signed longitudinal offset on a ring road of the given length, mapped
// into [-length/2, length/2). length <= 0 disables wrapping.
double wrap_delta(double delta, double length);

// Rectangular obstacle footprint, axis-aligned with the road.
struct Footprint {
  double length_m = 4.8;
  double width_m = 1.8;
};

// True iff the open segment (a, b) meets the closed axis-aligned rectangle
// centered at `center` with the given half extents.
bool segment_intersects_rect(Vec2 a, Vec2 b, Vec2 center, double half_length,
                             double half_width);

// True iff no obstacle rectangle blocks the open segment between a and b.
// Obstacles centered exactly on a or b are ignored (they are the endpoints'
// own bodies). road_length > 0 evaluates the segment on the ring road using
// the shortest longitudinal representative.
bool line_of_sight(Vec2 a, Vec2 b, std::span<const Vec2> obstacles,
                   Footprint footprint = {}, double road_length = 0.0);

}  // namespace beamsim
