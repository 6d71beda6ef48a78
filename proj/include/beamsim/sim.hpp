#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "beamsim/antenna.hpp"
#include "beamsim/control.hpp"
#include "beamsim/phy.hpp"
#include "beamsim/scenario.hpp"
#include "beamsim/scheduler.hpp"

namespace beamsim {

enum class Policy { kAdaptive, kBaseline };

const char* to_string(Policy policy);

struct SimConfig {
  ScenarioConfig scenario;
  SchedulingPeriod period;
  PhyConfig phy;
  BeamwidthLadder ladder;
  AntennaModel antenna_model;
  Policy policy = Policy::kAdaptive;
  int periods = 100;
  double control_range_m = 300.0;
  std::uint64_t master_seed = 1;
  bool collect_cam_events = false;

  SectorAntenna antenna() const { return SectorAntenna(ladder, antenna_model); }
  void validate() const;  // throws ConfigError before any period runs
};

// One transmitter's schedule and delivery results in one period. Records
// exist only for transmitters with at least one neighbor.
struct TxRecord {
  int tx_id = 0;
  int neighbor_count = 0;           // N
  int free_intervals = 0;           // F at decision time
  std::optional<double> beamwidth_deg;  // chosen width; empty when nothing fit
  int used_intervals = 0;           // beam groups actually scheduled
  int contacted = 0;
  std::vector<LinkSample> samples;
};

struct PeriodRecord {
  int replication = 0;
  int period_index = 0;
  std::vector<TxRecord> transmitters;
};

struct SimResult {
  Policy policy = Policy::kAdaptive;
  std::vector<PeriodRecord> records;
  std::vector<ControlEvent> events;
};

// Runs the configured number of scheduling periods: per period one
// topology drop, the CAM-ordered scheduling walk, announcement delivery,
// interval execution, and record collection. Deterministic in master_seed.
SimResult run(const SimConfig& config);

// Independent replications on seeds derived from the master seed,
// concatenated in replication order. max_parallel > 1 runs replications on
// worker threads; the merged output does not depend on the interleaving.
SimResult run_replications(const SimConfig& config, int replication_count,
                           int max_parallel = 1);

// Newline-delimited JSON, one object per (period, transmitter).
void write_records_ndjson(std::ostream& out, const SimResult& result);

}  // namespace beamsim
