#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "beamsim/errors.hpp"
#include "beamsim/manifest.hpp"
#include "beamsim/metrics.hpp"
#include "beamsim/sim.hpp"

namespace fs = std::filesystem;
using namespace beamsim;

namespace {

struct CliOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<int> periods;
  std::optional<int> replications;
  std::optional<int> parallel;
  std::optional<std::string> policy;
  bool dump_topology = false;
  bool event_log = false;
  bool link_log = false;
  bool dump_records = false;
};

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

void run_manifest(const RunManifest& manifest, const CliOptions& options) {
  const fs::path out_root(manifest.out_dir);
  fs::create_directories(out_root);
  // The echoed manifest describes the run, not where it landed; keeping the
  // output path out of it makes equal-seed trees byte-identical.
  RunManifest echo = manifest;
  echo.out_dir = ".";
  const std::string echo_text = serialize_manifest(echo);
  write_file(out_root / "manifest.ini", echo_text);

  struct CellResult {
    std::map<Policy, MetricsReport> reports;
    std::map<Policy, SimResult> results;
    std::map<Policy, SimConfig> configs;
    double density = 0.0;
    double tx_ratio = 0.0;
    std::string dir;
  };
  std::vector<std::string> cell_order;
  std::map<std::string, CellResult> cells;

  for (const RunSpec& spec : expand_runs(manifest)) {
    SimConfig config = spec.config;
    config.collect_cam_events = options.event_log;
    SimResult result = run_replications(config, manifest.replications, manifest.parallel);
    MetricsReport report = build_report(result, config, manifest.replications);

    const fs::path run_dir = out_root / spec.cell_dir / to_string(spec.policy);
    fs::create_directories(run_dir);
    write_file(run_dir / "manifest.ini", echo_text);
    {
      std::ofstream out(run_dir / "contacted_box.dat");
      write_contacted_box_dat(out, report);
    }
    {
      std::ofstream out(run_dir / "beamwidth_cdf.dat");
      write_beamwidth_cdf_dat(out, report);
    }
    {
      std::ofstream out(run_dir / "pdr_box.dat");
      write_pdr_box_dat(out, report);
    }
    write_file(run_dir / "summary.json", report_to_json(report).dump(2) + "\n");

    if (options.dump_topology) {
      std::ofstream out(run_dir / "topology.csv");
      write_topology_csv(out, generate_drop(config.scenario, 0));
    }
    if (options.event_log) {
      std::ofstream out(run_dir / "events.csv");
      write_event_log_csv(out, result.events);
    }
    if (options.link_log) {
      std::ofstream out(run_dir / "links.csv");
      std::vector<LinkSample> samples;
      for (const PeriodRecord& record : result.records) {
        for (const TxRecord& tx : record.transmitters) {
          samples.insert(samples.end(), tx.samples.begin(), tx.samples.end());
        }
      }
      write_link_log_csv(out, samples);
    }
    if (options.dump_records) {
      std::ofstream out(run_dir / "records.ndjson");
      write_records_ndjson(out, result);
    }

    CellResult& cell = cells[spec.cell_dir];
    if (cell.reports.empty()) cell_order.push_back(spec.cell_dir);
    cell.density = spec.density;
    cell.tx_ratio = spec.tx_ratio;
    cell.dir = spec.cell_dir;
    cell.reports.emplace(spec.policy, std::move(report));
    cell.results.emplace(spec.policy, std::move(result));
    cell.configs.emplace(spec.policy, std::move(config));
  }

  // Per-cell throughput files and the top-level summary. Gains are defined
  // only when both policies ran on the cell's shared seed.
  const double duration_s =
      manifest.periods * manifest.replications * manifest.period.period_ms / 1e3;
  nlohmann::json summary = nlohmann::json::array();
  for (const std::string& name : cell_order) {
    const CellResult& cell = cells.at(name);
    double gain = std::numeric_limits<double>::quiet_NaN();
    const bool paired = cell.reports.count(Policy::kAdaptive) != 0 &&
                        cell.reports.count(Policy::kBaseline) != 0;
    if (paired) {
      gain = throughput_gain_percent(cell.results.at(Policy::kAdaptive).records,
                                     cell.results.at(Policy::kBaseline).records,
                                     manifest.phy, duration_s);
    }
    nlohmann::json cell_json;
    cell_json["density_veh_per_km"] = cell.density;
    cell_json["tx_ratio"] = cell.tx_ratio;
    for (const auto& [policy, report] : cell.reports) {
      const fs::path run_dir = out_root / name / to_string(policy);
      std::ofstream out(run_dir / "throughput.dat");
      write_throughput_dat(out, report,
                           policy == Policy::kAdaptive && paired
                               ? gain
                               : std::numeric_limits<double>::quiet_NaN());
      cell_json[to_string(policy)] = report_to_json(report);
    }
    if (paired) cell_json["throughput_gain_pct"] = gain;
    summary.push_back(std::move(cell_json));
  }
  write_file(out_root / "summary.json", summary.dump(2) + "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beamwidth-aware mmWave V2V scheduling simulator"};
  CliOptions options;

  app.add_option("--config", options.config_path, "Manifest file (key = value sections)")
      ->check(CLI::ExistingFile);
  app.add_option("--seed", options.seed, "Master seed override");
  app.add_option("--out", options.out_dir, "Output directory override");
  app.add_option("--periods", options.periods, "Scheduling periods per replication");
  app.add_option("--replications", options.replications, "Replications per run");
  app.add_option("--parallel", options.parallel, "Concurrent replications");
  app.add_option("--policy", options.policy, "adaptive, baseline or both");
  app.add_flag("--dump-topology", options.dump_topology, "Write topology.csv per run");
  app.add_flag("--event-log", options.event_log, "Write control-plane events.csv per run");
  app.add_flag("--link-log", options.link_log, "Write per-link links.csv per run");
  app.add_flag("--dump-records", options.dump_records, "Write records.ndjson per run");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  RunManifest manifest;
  try {
    if (!options.config_path.empty()) {
      manifest = parse_manifest_file(options.config_path);
    }
    // Flag precedence: command line > config file > defaults.
    if (options.seed) manifest.master_seed = *options.seed;
    if (options.out_dir) manifest.out_dir = *options.out_dir;
    if (options.periods) manifest.periods = *options.periods;
    if (options.replications) manifest.replications = *options.replications;
    if (options.parallel) manifest.parallel = *options.parallel;
    if (options.policy) manifest.policy = *options.policy;
    manifest.validate();
  } catch (const Error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  }

  try {
    run_manifest(manifest, options);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
