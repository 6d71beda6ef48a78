#pragma once

#include <string>
#include <vector>

#include "beamsim/sim.hpp"

namespace beamsim {

// Full description of a batch of runs: the scenario matrix (densities x
// transmitter ratios, one run per policy) plus every overridable
// configuration value. Round-trips through serialize_manifest unchanged.
struct RunManifest {
  std::vector<double> densities{75.0, 150.0};
  std::vector<double> tx_ratios{0.10, 0.50};
  std::string policy = "both";  // adaptive | baseline | both
  int periods = 100;
  int replications = 10;
  int parallel = 1;
  std::string out_dir = "out";
  std::uint64_t master_seed = 1;
  double control_range_m = 300.0;
  ScenarioConfig scenario;
  SchedulingPeriod period;
  PhyConfig phy;
  AntennaModel antenna;
  std::vector<double> ladder_entries;  // empty: default ladder

  void validate() const;  // throws ConfigError
};

// One expanded simulation run.
struct RunSpec {
  double density = 0.0;
  double tx_ratio = 0.0;
  Policy policy = Policy::kAdaptive;
  SimConfig config;
  std::string cell_dir;  // "<density>_<ratio percent>"
};

// Parses the key=value manifest dialect. Unknown sections or keys, parse
// errors, and constraint violations each raise ConfigError with a distinct
// diagnostic.
RunManifest parse_manifest(const std::string& content);
RunManifest parse_manifest_file(const std::string& path);

std::string serialize_manifest(const RunManifest& manifest);

// Expands the scenario matrix into concrete runs. The two policies of a
// cell share the cell's seed, so cross-policy comparisons are paired.
std::vector<RunSpec> expand_runs(const RunManifest& manifest);

}  // namespace beamsim
