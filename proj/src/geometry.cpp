#include "beamsim/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "beamsim/errors.hpp"

namespace beamsim {

namespace {
constexpr double kRadToDeg = 180.0 / 3.141592653589793238462643383279502884;
}

Bearing Bearing::from_degrees(double raw_degrees) {
  if (!std::isfinite(raw_degrees)) {
    throw InvalidArgument("bearing must be finite");
  }
  double d = std::fmod(raw_degrees, 360.0);
  if (d < 0.0) d += 360.0;
  if (d >= 360.0) d = 0.0;  // fmod can round back up to 360
  Bearing b;
  b.degrees_ = d;
  return b;
}

Bearing normalize_bearing(double raw_degrees) {
  return Bearing::from_degrees(raw_degrees);
}

Bearing bearing_between(Vec2 from, Vec2 to, Bearing heading) {
  const double dx = to.x - from.x;
  const double dy = to.y - from.y;
  if (dx == 0.0 && dy == 0.0) {
    throw DegenerateGeometry("bearing between coincident positions");
  }
  const double absolute = std::atan2(dy, dx) * kRadToDeg;
  return normalize_bearing(absolute - heading.degrees());
}

double angular_distance_deg(Bearing a, Bearing b) {
  double d = std::fabs(a.degrees() - b.degrees());
  return d > 180.0 ? 360.0 - d : d;
}

double wrap_delta(double delta, double length) {
  if (length <= 0.0) return delta;
  double d = std::fmod(delta, length);
  if (d < -length / 2.0) d += length;
  if (d >= length / 2.0) d -= length;
  return d;
}

bool segment_intersects_rect(Vec2 a, Vec2 b, Vec2 center, double half_length,
                             double half_width) {
  // Slab clipping of the parametric segment a + t(b-a), t in (0, 1).
  const double dx = b.x - a.x;
  const double dy = b.y - a.y;
  double t0 = 0.0;
  double t1 = 1.0;

  const auto clip = [&](double d, double lo, double hi, double p) {
    if (d == 0.0) return p >= lo && p <= hi;
    double ta = (lo - p) / d;
    double tb = (hi - p) / d;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    return t0 <= t1;
  };

  if (!clip(dx, center.x - half_length, center.x + half_length, a.x)) return false;
  if (!clip(dy, center.y - half_width, center.y + half_width, a.y)) return false;
  // Intersections confined to the segment endpoints do not block the open
  // segment.
  return t1 > 0.0 && t0 < 1.0;
}

bool line_of_sight(Vec2 a, Vec2 b, std::span<const Vec2> obstacles,
                   Footprint footprint, double road_length) {
  const double half_len = footprint.length_m / 2.0;
  const double half_wid = footprint.width_m / 2.0;
  // Evaluate in coordinates relative to a so the ring road reduces to the
  // shortest longitudinal representative of every point.
  const Vec2 origin{0.0, 0.0};
  const Vec2 target{wrap_delta(b.x - a.x, road_length), b.y - a.y};
  for (const Vec2& o : obstacles) {
    if ((o.x == a.x && o.y == a.y) || (o.x == b.x && o.y == b.y)) continue;
    const Vec2 rel{wrap_delta(o.x - a.x, road_length), o.y - a.y};
    if (segment_intersects_rect(origin, target, rel, half_len, half_wid)) {
      return false;
    }
  }
  return true;
}

}  // namespace beamsim
