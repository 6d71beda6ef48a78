#pragma once

// Independent reference implementations used only by tests. These must not
// share code paths with the library: beam counts are derived from interval
// membership instead of sector arithmetic, intersections from dense
// sampling, and dB budgets from step-by-step scalar recomputation.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

namespace oracle {

// Number of occupied beams: a sector [j*w, (j+1)*w) is occupied when some
// bearing lies inside it, tested by plain interval comparison.
inline int beams_needed(const std::vector<double>& bearings_deg, double beamwidth_deg) {
  const int sectors = static_cast<int>(std::lround(360.0 / beamwidth_deg));
  int count = 0;
  for (int j = 0; j < sectors; ++j) {
    const double lo = j * beamwidth_deg;
    const double hi = (j + 1) * beamwidth_deg;
    const bool occupied = std::any_of(bearings_deg.begin(), bearings_deg.end(),
                                      [&](double b) { return b >= lo && b < hi; });
    if (occupied) ++count;
  }
  return count;
}

// Exhaustive ladder scan on top of the interval-based beam count.
inline std::optional<double> min_beamwidth(const std::vector<double>& bearings_deg,
                                           int free_intervals,
                                           const std::vector<double>& ladder) {
  for (double width : ladder) {
    if (beams_needed(bearings_deg, width) <= free_intervals) return width;
  }
  return std::nullopt;
}

// Dense-sampling segment/rectangle intersection test (open segment).
inline bool segment_hits_rect(double ax, double ay, double bx, double by, double cx,
                              double cy, double half_len, double half_wid,
                              int samples = 4001) {
  for (int i = 1; i < samples; ++i) {
    const double t = static_cast<double>(i) / samples;
    const double x = ax + t * (bx - ax);
    const double y = ay + t * (by - ay);
    if (std::fabs(x - cx) <= half_len && std::fabs(y - cy) <= half_wid) return true;
  }
  return false;
}

// Friis free-space loss recomputed in one expression.
inline double path_loss_db(double distance_m, double carrier_hz) {
  return 20.0 * std::log10(distance_m * carrier_hz) - 147.55;
}

inline double flat_top_gain_dbi(double beamwidth_deg, double offset_db) {
  return 10.0 * (std::log10(360.0) - std::log10(beamwidth_deg)) + offset_db;
}

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

}  // namespace oracle
