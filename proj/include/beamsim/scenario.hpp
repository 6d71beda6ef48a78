#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "beamsim/geometry.hpp"

namespace beamsim {

enum class Mobility {
  // A fresh topology drop every scheduling period.
  kIndependentDrops,
  // One drop advanced at constant per-lane speed each period.
  kConstantSpeed,
};

struct ScenarioConfig {
  double density_veh_per_km = 75.0;  // total across all lanes
  int lanes = 4;
  // Calibrated so the mean LOS neighbor count lands on the reported
  // 4.9 / 7.9 averages at 75 / 150 veh/km.
  double lane_width_m = 3.0;
  double road_length_m = 2000.0;
  double tx_ratio = 0.10;
  double neighbor_range_m = 50.0;
  std::uint64_t seed = 1;
  double min_gap_m = 5.0;
  double cam_period_ms = 100.0;
  Footprint footprint;
  Mobility mobility = Mobility::kIndependentDrops;
  std::vector<double> lane_speeds_mps;  // constant-speed mode only

  void validate() const;  // throws ConfigError
};

struct Vehicle {
  int id = 0;
  int lane = 0;
  double longitudinal_m = 0.0;
  double lateral_m = 0.0;
  Bearing heading;
  bool is_mm_tx = false;
  double cam_offset_ms = 0.0;

  Vec2 position() const { return {longitudinal_m, lateral_m}; }
};

struct NeighborEntry {
  int id = 0;
  Bearing bearing;  // from the owner, relative to its heading
  double distance_m = 0.0;
};

// Neighbors of one vehicle, sorted clockwise by bearing (ties by id).
struct NeighborTable {
  int owner = 0;
  std::vector<NeighborEntry> entries;

  int count() const { return static_cast<int>(entries.size()); }
};

// One period's vehicle drop with lane-sorted lookup structure for fast
// blockage queries on the ring road.
class Topology {
 public:
  Topology(std::vector<Vehicle> vehicles, const ScenarioConfig& config);

  const std::vector<Vehicle>& vehicles() const { return vehicles_; }
  const Vehicle& vehicle(int id) const { return vehicles_[static_cast<size_t>(id)]; }
  double road_length() const { return road_length_; }

  // Torus Euclidean distance between two vehicles.
  double distance(int a, int b) const;
  // Bearing of b as seen from a, relative to a's heading.
  Bearing bearing_from(int a, int b) const;
  // True iff no third vehicle's body blocks the open segment a-b.
  bool los(int a, int b) const;

 private:
  template <typename Fn>
  void for_each_in_window(int lane, double x_lo, double x_hi, Fn&& fn) const;

  std::vector<Vehicle> vehicles_;
  double road_length_ = 0.0;
  Footprint footprint_;
  double lane_width_m_ = 0.0;
  int lanes_ = 0;
  // Per lane: vehicle ids sorted by longitudinal position.
  std::vector<std::vector<int>> lane_order_;
};

// Draws the vehicle drop for one period. Fully determined by
// (config.seed, drop_index): per-lane Poisson placement with a minimum
// in-lane gap, Bernoulli transmitter selection, uniform CAM offsets.
std::vector<Vehicle> generate_drop(const ScenarioConfig& config, int drop_index);

// Torus distance between two road positions (x is the longitudinal axis).
double wraparound_distance(Vec2 a, Vec2 b, double road_length);

// LOS between two vehicles with all other bodies as potential blockers.
bool los(const Vehicle& a, const Vehicle& b, std::span<const Vehicle> all,
         const ScenarioConfig& config);

// Neighbor set of v: every vehicle closer than config.neighbor_range_m
// under LOS, sorted clockwise.
NeighborTable neighbors_of(const Vehicle& v, const Topology& topology,
                           const ScenarioConfig& config);
NeighborTable neighbors_of(const Vehicle& v, std::span<const Vehicle> all,
                           const ScenarioConfig& config);

// One CSV row per vehicle: id, lane, longitudinal_m, lateral_m,
// heading_deg, is_mm_tx, cam_offset_ms.
void write_topology_csv(std::ostream& out, std::span<const Vehicle> vehicles);

}  // namespace beamsim
