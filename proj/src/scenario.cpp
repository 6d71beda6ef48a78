#include "beamsim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "beamsim/errors.hpp"
#include "beamsim/rng.hpp"

namespace beamsim {

void ScenarioConfig::validate() const {
  if (!(density_veh_per_km > 0.0)) throw ConfigError("density must be positive");
  if (lanes < 1) throw ConfigError("lane count must be >= 1");
  if (!(lane_width_m > 0.0)) throw ConfigError("lane width must be positive");
  if (!(road_length_m > 0.0)) throw ConfigError("road length must be positive");
  if (tx_ratio < 0.0 || tx_ratio > 1.0) throw ConfigError("tx ratio must be in [0, 1]");
  if (!(neighbor_range_m > 0.0)) throw ConfigError("neighbor range must be positive");
  if (min_gap_m < 0.0) throw ConfigError("minimum gap must be non-negative");
  if (!(cam_period_ms > 0.0)) throw ConfigError("CAM period must be positive");
}

namespace {

double lane_center(const ScenarioConfig& config, int lane) {
  return lane * config.lane_width_m + config.lane_width_m / 2.0;
}

Bearing lane_heading(const ScenarioConfig& config, int lane) {
  // Two directions, half of the lanes each; low lanes travel along +x.
  return normalize_bearing(lane < (config.lanes + 1) / 2 ? 0.0 : 180.0);
}

double lane_speed(const ScenarioConfig& config, int lane) {
  if (config.lane_speeds_mps.empty()) return 30.0;
  return config.lane_speeds_mps[lane % config.lane_speeds_mps.size()];
}

// Min-gap check on the ring road against already placed vehicles in a lane.
bool gap_ok(double x, const std::vector<double>& placed, double min_gap, double length) {
  for (double p : placed) {
    if (std::fabs(wrap_delta(x - p, length)) < min_gap) return false;
  }
  return true;
}

std::vector<Vehicle> draw_base_drop(const ScenarioConfig& config, Rng& rng) {
  const double per_lane_per_m = config.density_veh_per_km / config.lanes / 1000.0;
  std::vector<Vehicle> vehicles;
  for (int lane = 0; lane < config.lanes; ++lane) {
    // Poisson count keeps the expected total exactly density * length;
    // positions are uniform with overlapping placements resampled.
    const int count = rng.poisson(per_lane_per_m * config.road_length_m);
    std::vector<double> xs;
    xs.reserve(static_cast<size_t>(count));
    for (int i = 0; i < count; ++i) {
      double x = rng.uniform(0.0, config.road_length_m);
      for (int attempt = 0; attempt < 100 && !gap_ok(x, xs, config.min_gap_m, config.road_length_m);
           ++attempt) {
        x = rng.uniform(0.0, config.road_length_m);
      }
      xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    for (double x : xs) {
      Vehicle v;
      v.id = static_cast<int>(vehicles.size());
      v.lane = lane;
      v.longitudinal_m = x;
      v.lateral_m = lane_center(config, lane);
      v.heading = lane_heading(config, lane);
      vehicles.push_back(v);
    }
  }
  for (Vehicle& v : vehicles) {
    v.is_mm_tx = rng.bernoulli(config.tx_ratio);
  }
  for (Vehicle& v : vehicles) {
    v.cam_offset_ms = rng.uniform(0.0, config.cam_period_ms);
  }
  return vehicles;
}

}  // namespace

std::vector<Vehicle> generate_drop(const ScenarioConfig& config, int drop_index) {
  config.validate();
  if (config.mobility == Mobility::kIndependentDrops) {
    Rng rng(derive_seed(config.seed, static_cast<std::uint64_t>(drop_index)));
    return draw_base_drop(config, rng);
  }
  // Constant-speed mode: one base drop advanced along each lane's heading.
  Rng rng(derive_seed(config.seed, 0));
  std::vector<Vehicle> vehicles = draw_base_drop(config, rng);
  const double elapsed_s = drop_index * config.cam_period_ms / 1000.0;
  for (Vehicle& v : vehicles) {
    const double dir = v.heading.degrees() == 0.0 ? 1.0 : -1.0;
    double x = std::fmod(v.longitudinal_m + dir * lane_speed(config, v.lane) * elapsed_s,
                         config.road_length_m);
    if (x < 0.0) x += config.road_length_m;
    v.longitudinal_m = x;
  }
  return vehicles;
}

double wraparound_distance(Vec2 a, Vec2 b, double road_length) {
  const double dx = wrap_delta(b.x - a.x, road_length);
  const double dy = b.y - a.y;
  return std::hypot(dx, dy);
}

Topology::Topology(std::vector<Vehicle> vehicles, const ScenarioConfig& config)
    : vehicles_(std::move(vehicles)),
      road_length_(config.road_length_m),
      footprint_(config.footprint),
      lane_width_m_(config.lane_width_m),
      lanes_(config.lanes) {
  lane_order_.assign(static_cast<size_t>(lanes_), {});
  for (size_t i = 0; i < vehicles_.size(); ++i) {
    const Vehicle& v = vehicles_[i];
    if (v.id != static_cast<int>(i)) {
      throw InvalidArgument("vehicle ids must be contiguous and in order");
    }
    if (v.lane < 0 || v.lane >= lanes_) {
      throw InvalidArgument("vehicle lane out of range");
    }
    lane_order_[static_cast<size_t>(v.lane)].push_back(v.id);
  }
  for (auto& order : lane_order_) {
    std::sort(order.begin(), order.end(), [this](int a, int b) {
      return vehicles_[static_cast<size_t>(a)].longitudinal_m <
             vehicles_[static_cast<size_t>(b)].longitudinal_m;
    });
  }
}

double Topology::distance(int a, int b) const {
  return wraparound_distance(vehicle(a).position(), vehicle(b).position(), road_length_);
}

Bearing Topology::bearing_from(int a, int b) const {
  const Vehicle& va = vehicle(a);
  const Vehicle& vb = vehicle(b);
  const Vec2 rel{wrap_delta(vb.longitudinal_m - va.longitudinal_m, road_length_),
                 vb.lateral_m - va.lateral_m};
  return bearing_between({0.0, 0.0}, rel, va.heading);
}

bool Topology::los(int a, int b) const {
  const Vehicle& va = vehicle(a);
  const Vehicle& vb = vehicle(b);
  const double half_len = footprint_.length_m / 2.0;
  const double half_wid = footprint_.width_m / 2.0;
  const Vec2 target{wrap_delta(vb.longitudinal_m - va.longitudinal_m, road_length_),
                    vb.lateral_m - va.lateral_m};
  const double seg_lo = std::min(0.0, target.x) - half_len;
  const double seg_hi = std::max(0.0, target.x) + half_len;
  const double y_lo = std::min(0.0, target.y) - half_wid;
  const double y_hi = std::max(0.0, target.y) + half_wid;

  bool blocked = false;
  const auto check = [&](int id) {
    if (blocked || id == a || id == b) return;
    const Vehicle& o = vehicle(id);
    const double rel_y = o.lateral_m - va.lateral_m;
    if (rel_y < y_lo || rel_y > y_hi) return;
    const double rel_x = wrap_delta(o.longitudinal_m - va.longitudinal_m, road_length_);
    if (rel_x < seg_lo || rel_x > seg_hi) return;
    if (segment_intersects_rect({0.0, 0.0}, target, {rel_x, rel_y}, half_len, half_wid)) {
      blocked = true;
    }
  };

  for (int lane = 0; lane < lanes_ && !blocked; ++lane) {
    for_each_in_window(lane, va.longitudinal_m + seg_lo, va.longitudinal_m + seg_hi, check);
  }
  return !blocked;
}

// Visits every vehicle of a lane whose longitudinal position lies in
// [x_lo, x_hi] on the ring road.
template <typename Fn>
void Topology::for_each_in_window(int lane, double x_lo, double x_hi, Fn&& fn) const {
  const auto& order = lane_order_[static_cast<size_t>(lane)];
  if (order.empty()) return;
  if (x_hi - x_lo >= road_length_) {
    for (int id : order) fn(id);
    return;
  }
  const auto pos = [this](int id) { return vehicle(id).longitudinal_m; };
  const auto visit_range = [&](double lo, double hi) {
    auto first = std::lower_bound(order.begin(), order.end(), lo,
                                  [&](int id, double v) { return pos(id) < v; });
    for (; first != order.end() && pos(*first) <= hi; ++first) fn(*first);
  };
  double lo = std::fmod(x_lo, road_length_);
  if (lo < 0.0) lo += road_length_;
  double hi = std::fmod(x_hi, road_length_);
  if (hi < 0.0) hi += road_length_;
  if (lo <= hi) {
    visit_range(lo, hi);
  } else {
    visit_range(lo, road_length_);
    visit_range(0.0, hi);
  }
}

bool los(const Vehicle& a, const Vehicle& b, std::span<const Vehicle> all,
         const ScenarioConfig& config) {
  const double half_len = config.footprint.length_m / 2.0;
  const double half_wid = config.footprint.width_m / 2.0;
  const Vec2 target{wrap_delta(b.longitudinal_m - a.longitudinal_m, config.road_length_m),
                    b.lateral_m - a.lateral_m};
  for (const Vehicle& o : all) {
    if (o.id == a.id || o.id == b.id) continue;
    const Vec2 rel{wrap_delta(o.longitudinal_m - a.longitudinal_m, config.road_length_m),
                   o.lateral_m - a.lateral_m};
    if (segment_intersects_rect({0.0, 0.0}, target, rel, half_len, half_wid)) {
      return false;
    }
  }
  return true;
}

NeighborTable neighbors_of(const Vehicle& v, const Topology& topology,
                           const ScenarioConfig& config) {
  NeighborTable table;
  table.owner = v.id;
  for (const Vehicle& other : topology.vehicles()) {
    if (other.id == v.id) continue;
    const double dx =
        wrap_delta(other.longitudinal_m - v.longitudinal_m, topology.road_length());
    if (std::fabs(dx) >= config.neighbor_range_m) continue;
    const double dist = std::hypot(dx, other.lateral_m - v.lateral_m);
    if (dist >= config.neighbor_range_m) continue;
    if (!topology.los(v.id, other.id)) continue;
    table.entries.push_back({other.id, topology.bearing_from(v.id, other.id), dist});
  }
  std::sort(table.entries.begin(), table.entries.end(),
            [](const NeighborEntry& a, const NeighborEntry& b) {
              if (a.bearing.degrees() != b.bearing.degrees()) return a.bearing < b.bearing;
              return a.id < b.id;
            });
  return table;
}

NeighborTable neighbors_of(const Vehicle& v, std::span<const Vehicle> all,
                           const ScenarioConfig& config) {
  Topology topology(std::vector<Vehicle>(all.begin(), all.end()), config);
  return neighbors_of(v, topology, config);
}

void write_topology_csv(std::ostream& out, std::span<const Vehicle> vehicles) {
  out << "id,lane,longitudinal_m,lateral_m,heading_deg,is_mm_tx,cam_offset_ms\n";
  for (const Vehicle& v : vehicles) {
    out << v.id << ',' << v.lane << ',' << v.longitudinal_m << ',' << v.lateral_m << ','
        << v.heading.degrees() << ',' << (v.is_mm_tx ? 1 : 0) << ',' << v.cam_offset_ms
        << '\n';
  }
}

}  // namespace beamsim
