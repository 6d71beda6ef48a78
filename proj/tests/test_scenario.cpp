#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "beamsim/errors.hpp"
#include "beamsim/scenario.hpp"

using namespace beamsim;

namespace {

ScenarioConfig desk_config(double density, double ratio, std::uint64_t seed = 1) {
  ScenarioConfig config;
  config.density_veh_per_km = density;
  config.tx_ratio = ratio;
  config.seed = seed;
  return config;
}

}  // namespace

TEST_CASE("expected vehicle count matches density * length") {
  const ScenarioConfig config = desk_config(75.0, 0.10);
  double total = 0.0;
  const int drops = 1000;
  for (int d = 0; d < drops; ++d) {
    total += static_cast<double>(generate_drop(config, d).size());
  }
  CHECK(total / drops == doctest::Approx(150.0).epsilon(5.0 / 150.0));
}

TEST_CASE("tx_ratio zero yields no transmitters") {
  const ScenarioConfig config = desk_config(75.0, 0.0);
  for (const Vehicle& v : generate_drop(config, 0)) {
    CHECK_FALSE(v.is_mm_tx);
  }
}

TEST_CASE("same (seed, drop_index) reproduces the drop exactly") {
  const ScenarioConfig config = desk_config(150.0, 0.50, 7);
  std::ostringstream a, b;
  write_topology_csv(a, generate_drop(config, 3));
  write_topology_csv(b, generate_drop(config, 3));
  CHECK(a.str() == b.str());
  std::ostringstream c;
  write_topology_csv(c, generate_drop(config, 4));
  CHECK(a.str() != c.str());
}

TEST_CASE("vehicles sit on lane centers with alternating headings") {
  const ScenarioConfig config = desk_config(150.0, 0.10);
  for (const Vehicle& v : generate_drop(config, 0)) {
    CHECK(v.lateral_m ==
          doctest::Approx(v.lane * config.lane_width_m + config.lane_width_m / 2));
    CHECK(v.cam_offset_ms >= 0.0);
    CHECK(v.cam_offset_ms < config.cam_period_ms);
    if (v.lane < 2) CHECK(v.heading.degrees() == 0.0);
    else CHECK(v.heading.degrees() == 180.0);
  }
}

TEST_CASE("minimum in-lane gap is enforced") {
  const ScenarioConfig config = desk_config(150.0, 0.10, 13);
  for (int d = 0; d < 20; ++d) {
    const std::vector<Vehicle> vehicles = generate_drop(config, d);
    for (const Vehicle& a : vehicles) {
      for (const Vehicle& b : vehicles) {
        if (a.id >= b.id || a.lane != b.lane) continue;
        const double gap =
            std::fabs(wrap_delta(a.longitudinal_m - b.longitudinal_m, config.road_length_m));
        CHECK(gap >= config.min_gap_m);
      }
    }
  }
}

TEST_CASE("wraparound distance") {
  CHECK(wraparound_distance({10, 0}, {1990, 0}, 2000.0) == doctest::Approx(20.0));
  CHECK(wraparound_distance({0, 0}, {1000, 0}, 2000.0) == doctest::Approx(1000.0));
  CHECK(wraparound_distance({5, 1}, {5, 1}, 2000.0) == 0.0);
}

TEST_CASE("isolated vehicle has an empty neighbor table") {
  ScenarioConfig config = desk_config(75.0, 0.10);
  std::vector<Vehicle> vehicles(1);
  vehicles[0].id = 0;
  vehicles[0].longitudinal_m = 100.0;
  vehicles[0].lateral_m = 1.75;
  const NeighborTable table = neighbors_of(vehicles[0], vehicles, config);
  CHECK(table.count() == 0);
}

TEST_CASE("neighbor entries are in range, LOS, and sorted clockwise") {
  const ScenarioConfig config = desk_config(150.0, 0.50, 21);
  const std::vector<Vehicle> vehicles = generate_drop(config, 0);
  const Topology topology(std::vector<Vehicle>(vehicles), config);
  for (const Vehicle& v : vehicles) {
    if (!v.is_mm_tx) continue;
    const NeighborTable table = neighbors_of(v, topology, config);
    double last_bearing = -1.0;
    for (const NeighborEntry& entry : table.entries) {
      CHECK(entry.distance_m < config.neighbor_range_m);
      CHECK(topology.los(v.id, entry.id));
      CHECK(entry.bearing.degrees() >= last_bearing);
      last_bearing = entry.bearing.degrees();
    }
  }
}

TEST_CASE("neighbor relation is symmetric") {
  const ScenarioConfig config = desk_config(150.0, 0.50, 33);
  const std::vector<Vehicle> vehicles = generate_drop(config, 2);
  const Topology topology(std::vector<Vehicle>(vehicles), config);
  std::set<std::pair<int, int>> edges;
  for (const Vehicle& v : vehicles) {
    for (const NeighborEntry& entry : neighbors_of(v, topology, config).entries) {
      edges.insert({v.id, entry.id});
    }
  }
  for (const auto& [a, b] : edges) {
    CHECK(edges.count({b, a}) == 1);
  }
}

TEST_CASE("in-lane vehicles block the ones behind them") {
  ScenarioConfig config = desk_config(75.0, 0.10);
  std::vector<Vehicle> vehicles(3);
  for (int i = 0; i < 3; ++i) {
    vehicles[static_cast<size_t>(i)].id = i;
    vehicles[static_cast<size_t>(i)].lane = 0;
    vehicles[static_cast<size_t>(i)].lateral_m = 1.75;
  }
  vehicles[0].longitudinal_m = 100.0;
  vehicles[1].longitudinal_m = 115.0;
  vehicles[2].longitudinal_m = 130.0;
  const NeighborTable table = neighbors_of(vehicles[0], vehicles, config);
  REQUIRE(table.count() == 1);
  CHECK(table.entries[0].id == 1);
}

TEST_CASE("mean neighbor count calibration against the reported averages") {
  // 4.9 neighbors at 75 veh/km and 7.9 at 150 veh/km, within 15%.
  const struct {
    double density;
    double target;
  } cases[] = {{75.0, 4.9}, {150.0, 7.9}};
  for (const auto& c : cases) {
    const ScenarioConfig config = desk_config(c.density, 0.10, 5);
    double sum = 0.0;
    long count = 0;
    for (int d = 0; d < 500; ++d) {
      const Topology topology(generate_drop(config, d), config);
      for (const Vehicle& v : topology.vehicles()) {
        if (!v.is_mm_tx) continue;
        sum += neighbors_of(v, topology, config).count();
        ++count;
      }
    }
    REQUIRE(count > 0);
    const double mean = sum / static_cast<double>(count);
    CAPTURE(c.density);
    CHECK(mean > c.target * 0.85);
    CHECK(mean < c.target * 1.15);
  }
}

TEST_CASE("constant-speed mode advances positions deterministically") {
  ScenarioConfig config = desk_config(75.0, 0.10, 9);
  config.mobility = Mobility::kConstantSpeed;
  config.lane_speeds_mps = {30.0, 25.0, 30.0, 25.0};
  const std::vector<Vehicle> start = generate_drop(config, 0);
  const std::vector<Vehicle> later = generate_drop(config, 10);
  REQUIRE(start.size() == later.size());
  for (size_t i = 0; i < start.size(); ++i) {
    CHECK(start[i].id == later[i].id);
    CHECK(start[i].is_mm_tx == later[i].is_mm_tx);
    const double expected_shift =
        (start[i].heading.degrees() == 0.0 ? 1.0 : -1.0) *
        config.lane_speeds_mps[static_cast<size_t>(start[i].lane)] * 1.0;
    const double shift =
        wrap_delta(later[i].longitudinal_m - start[i].longitudinal_m, config.road_length_m);
    CHECK(shift == doctest::Approx(expected_shift).epsilon(1e-9));
  }
}

TEST_CASE("invalid configs are rejected") {
  ScenarioConfig config = desk_config(75.0, 0.10);
  config.density_veh_per_km = 0.0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = desk_config(75.0, 1.5);
  CHECK_THROWS_AS(config.validate(), ConfigError);
  config = desk_config(75.0, 0.10);
  config.lanes = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);
}

TEST_CASE("topology csv has the documented columns") {
  const ScenarioConfig config = desk_config(75.0, 0.10);
  std::ostringstream out;
  write_topology_csv(out, generate_drop(config, 0));
  CHECK(out.str().rfind("id,lane,longitudinal_m,lateral_m,heading_deg,is_mm_tx,cam_offset_ms\n",
                        0) == 0);
}
