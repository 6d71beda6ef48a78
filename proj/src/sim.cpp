#include "beamsim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <ostream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "beamsim/errors.hpp"
#include "beamsim/rng.hpp"

namespace beamsim {

const char* to_string(Policy policy) {
  return policy == Policy::kAdaptive ? "adaptive" : "baseline";
}

void SimConfig::validate() const {
  scenario.validate();
  period.validate();
  phy.validate(period.interval_ms);
  if (periods < 1) throw ConfigError("period count must be >= 1");
  if (!(control_range_m > 0.0)) throw ConfigError("control range must be positive");
  if (std::fabs(scenario.cam_period_ms - period.period_ms) > 1e-9) {
    throw ConfigError("CAM period must equal the scheduling period");
  }
  antenna();  // throws when the ladder and sector count disagree
}

namespace {

struct Decision {
  int record_index = -1;
  BeamPlan plan;
};

void run_period(const SimConfig& config, const SectorAntenna& antenna, int period_index,
                SimResult& out) {
  const ScenarioConfig& scenario = config.scenario;
  std::vector<Vehicle> vehicles = generate_drop(scenario, period_index);
  const Topology topology(std::move(vehicles), scenario);
  const auto& all = topology.vehicles();
  const int k = config.period.interval_count;

  std::vector<ReservationTable> tables;
  tables.reserve(all.size());
  for (const Vehicle& v : all) tables.emplace_back(v.id, k);

  PeriodRecord record;
  record.period_index = period_index;
  std::vector<Decision> decisions;

  // Scheduling walk: every transmitter decides at its CAM instant, using
  // the announcements heard strictly before it.
  const double period_start = period_index * config.period.period_ms;
  for (const auto& [offset, id] : cam_schedule(all, 1, config.period.period_ms)) {
    const double now = period_start + offset;
    const Vehicle& v = topology.vehicle(id);
    if (config.collect_cam_events) {
      out.events.push_back({now, ControlEventType::kCam, id, -1, -1});
    }
    if (!v.is_mm_tx) continue;

    const NeighborTable neighbors = neighbors_of(v, topology, scenario);
    if (neighbors.count() == 0) continue;

    const IntervalAvailability avail = check_sched_tx(tables[static_cast<size_t>(id)],
                                                      config.period);
    TxRecord tx_record;
    tx_record.tx_id = id;
    tx_record.neighbor_count = neighbors.count();
    tx_record.free_intervals = avail.count();

    BeamPlan plan;
    if (config.policy == Policy::kAdaptive) {
      if (const std::optional<double> width = min_beamwidth(neighbors, avail, antenna)) {
        plan = schedule_tx(neighbors, *width, avail, antenna);
      }
    } else {
      plan = baseline_schedule(neighbors, avail, antenna);
    }

    if (!plan.groups.empty()) {
      tx_record.beamwidth_deg = plan.beamwidth_deg;
      tx_record.used_intervals = static_cast<int>(plan.groups.size());
      tx_record.contacted = plan.contacted_count();

      const Announcement ann =
          Announcement::from_plan(id, period_index, plan, config.period);
      apply_announcement(tables[static_cast<size_t>(id)], ann, now, nullptr);
      Cam cam{id, now, v.position(), ann};
      for (int recipient :
           deliver_broadcast(cam, all, config.control_range_m, scenario.road_length_m)) {
        apply_announcement(tables[static_cast<size_t>(recipient)], ann, now, &out.events);
      }
    }

    decisions.push_back({static_cast<int>(record.transmitters.size()), std::move(plan)});
    record.transmitters.push_back(std::move(tx_record));
  }

  // Interval execution. All bursts of an interval overlap completely.
  std::unordered_map<int, int> record_of_tx;
  for (const Decision& d : decisions) {
    record_of_tx[record.transmitters[static_cast<size_t>(d.record_index)].tx_id] =
        d.record_index;
  }
  for (int interval = 0; interval < k; ++interval) {
    std::vector<ActiveTransmission> active;
    for (const Decision& d : decisions) {
      const int tx_id = record.transmitters[static_cast<size_t>(d.record_index)].tx_id;
      for (const BeamGroup& group : d.plan.groups) {
        if (group.interval_index == interval) {
          active.push_back(
              {tx_id, interval, group.beam_sector, d.plan.beamwidth_deg,
               group.receiver_ids});
        }
      }
    }
    for (LinkSample& sample : interval_outcomes(period_index, interval, active, topology,
                                                tables, antenna, config.phy)) {
      record.transmitters[static_cast<size_t>(record_of_tx.at(sample.tx_id))]
          .samples.push_back(std::move(sample));
    }
  }

  out.records.push_back(std::move(record));
}

}  // namespace

SimResult run(const SimConfig& config) {
  config.validate();
  SimConfig effective = config;
  effective.scenario.seed = config.master_seed;
  const SectorAntenna antenna = config.antenna();

  SimResult result;
  result.policy = config.policy;
  for (int p = 0; p < config.periods; ++p) {
    run_period(effective, antenna, p, result);
  }
  return result;
}

SimResult run_replications(const SimConfig& config, int replication_count,
                           int max_parallel) {
  if (replication_count < 1) throw ConfigError("replication count must be >= 1");
  const auto seeded = [&](int r) {
    SimConfig c = config;
    c.master_seed = r == 0 ? config.master_seed
                           : derive_seed(config.master_seed, static_cast<std::uint64_t>(r));
    return c;
  };

  std::vector<SimResult> parts(static_cast<size_t>(replication_count));
  if (max_parallel <= 1) {
    for (int r = 0; r < replication_count; ++r) parts[static_cast<size_t>(r)] = run(seeded(r));
  } else {
    std::vector<std::future<SimResult>> futures;
    futures.reserve(static_cast<size_t>(replication_count));
    int next = 0;
    while (next < replication_count || !futures.empty()) {
      while (next < replication_count &&
             static_cast<int>(futures.size()) < max_parallel) {
        futures.push_back(std::async(std::launch::async,
                                     [&, r = next] { return run(seeded(r)); }));
        ++next;
      }
      const int done = next - static_cast<int>(futures.size());
      parts[static_cast<size_t>(done)] = futures.front().get();
      futures.erase(futures.begin());
    }
  }

  SimResult merged;
  merged.policy = config.policy;
  for (int r = 0; r < replication_count; ++r) {
    SimResult& part = parts[static_cast<size_t>(r)];
    for (PeriodRecord& record : part.records) {
      record.replication = r;
      merged.records.push_back(std::move(record));
    }
    merged.events.insert(merged.events.end(), part.events.begin(), part.events.end());
  }
  return merged;
}

void write_records_ndjson(std::ostream& out, const SimResult& result) {
  for (const PeriodRecord& record : result.records) {
    for (const TxRecord& tx : record.transmitters) {
      nlohmann::json obj;
      obj["replication"] = record.replication;
      obj["period"] = record.period_index;
      obj["tx"] = tx.tx_id;
      obj["neighbors"] = tx.neighbor_count;
      obj["free_intervals"] = tx.free_intervals;
      if (tx.beamwidth_deg.has_value()) {
        obj["beamwidth_deg"] = *tx.beamwidth_deg;
      } else {
        obj["beamwidth_deg"] = nullptr;
      }
      obj["used_intervals"] = tx.used_intervals;
      obj["contacted"] = tx.contacted;
      nlohmann::json samples = nlohmann::json::array();
      for (const LinkSample& s : tx.samples) {
        nlohmann::json sj;
        sj["interval"] = s.interval_index;
        sj["rx"] = s.rx_id;
        if (std::isfinite(s.sinr_db)) {
          sj["sinr_db"] = s.sinr_db;
        } else {
          sj["sinr_db"] = nullptr;
        }
        sj["delivered"] = s.delivered_packets;
        sj["outcome"] = to_string(s.outcome);
        samples.push_back(std::move(sj));
      }
      obj["samples"] = std::move(samples);
      out << obj.dump() << '\n';
    }
  }
}

}  // namespace beamsim
