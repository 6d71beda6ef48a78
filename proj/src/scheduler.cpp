#include "beamsim/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "beamsim/errors.hpp"

namespace beamsim {

void SchedulingPeriod::validate() const {
  if (interval_count < 1) throw ConfigError("interval count must be >= 1");
  if (!(interval_ms > 0.0)) throw ConfigError("interval duration must be positive");
  if (std::fabs(interval_count * interval_ms - period_ms) > 1e-9) {
    throw ConfigError("interval_count * interval_ms must equal period_ms");
  }
}

int BeamPlan::contacted_count() const {
  int n = 0;
  for (const BeamGroup& g : groups) n += static_cast<int>(g.receiver_ids.size());
  return n;
}

IntervalAvailability check_sched_tx(const ReservationTable& table,
                                    const SchedulingPeriod& period) {
  IntervalAvailability avail;
  const int k = period.interval_count;
  for (int i = 0; i < k && i < static_cast<int>(table.slots.size()); ++i) {
    if (table.slots[static_cast<size_t>(i)].role == SlotRole::kFree) {
      avail.available.push_back(i);
    }
  }
  return avail;
}

int beams_needed(const NeighborTable& neighbors, double beamwidth_deg,
                 const SectorAntenna& antenna) {
  int count = 0;
  int last_sector = -1;
  // Entries are sorted by bearing, so equal sectors are adjacent.
  for (const NeighborEntry& n : neighbors.entries) {
    const int sector = antenna.sector_index(n.bearing, beamwidth_deg);
    if (sector != last_sector) {
      ++count;
      last_sector = sector;
    }
  }
  return count;
}

std::optional<double> min_beamwidth(const NeighborTable& neighbors,
                                    const IntervalAvailability& avail,
                                    const SectorAntenna& antenna) {
  const int free = avail.count();
  for (double width : antenna.ladder().entries()) {
    if (beams_needed(neighbors, width, antenna) <= free) return width;
  }
  return std::nullopt;
}

BeamPlan schedule_tx(const NeighborTable& neighbors, double beamwidth_deg,
                     const IntervalAvailability& avail, const SectorAntenna& antenna) {
  // Group receivers by sector; std::map keeps clockwise sector order.
  std::map<int, std::vector<int>> groups;
  for (const NeighborEntry& n : neighbors.entries) {
    groups[antenna.sector_index(n.bearing, beamwidth_deg)].push_back(n.id);
  }
  if (static_cast<int>(groups.size()) > avail.count()) {
    throw CapacityError("beam groups exceed available intervals");
  }
  BeamPlan plan;
  plan.beamwidth_deg = beamwidth_deg;
  size_t slot = 0;
  for (auto& [sector, receivers] : groups) {
    BeamGroup group;
    group.beam_sector = sector;
    group.interval_index = avail.available[slot++];
    group.receiver_ids = std::move(receivers);
    plan.groups.push_back(std::move(group));
  }
  return plan;
}

BeamPlan baseline_schedule(const NeighborTable& neighbors,
                           const IntervalAvailability& avail,
                           const SectorAntenna& antenna) {
  const double width = antenna.ladder().base_deg();
  BeamPlan plan;
  plan.beamwidth_deg = width;
  const size_t n = std::min(neighbors.entries.size(),
                            static_cast<size_t>(avail.count()));
  for (size_t i = 0; i < n; ++i) {
    const NeighborEntry& entry = neighbors.entries[i];
    BeamGroup group;
    group.beam_sector = antenna.sector_index(entry.bearing, width);
    group.interval_index = avail.available[i];
    group.receiver_ids = {entry.id};
    plan.groups.push_back(std::move(group));
  }
  return plan;
}

double contacted_ratio(const BeamPlan& plan, const NeighborTable& neighbors) {
  if (neighbors.entries.empty()) return 1.0;
  return static_cast<double>(plan.contacted_count()) /
         static_cast<double>(neighbors.count());
}

}  // namespace beamsim
