#pragma once

#include <optional>
#include <vector>

#include "beamsim/antenna.hpp"
#include "beamsim/scenario.hpp"

namespace beamsim {

struct SchedulingPeriod {
  double period_ms = 100.0;
  int interval_count = 5;
  double interval_ms = 20.0;

  void validate() const;  // throws ConfigError unless count * interval == period
};

// Reservation roles a vehicle can hold in one scheduling interval.
enum class SlotRole { kFree, kTx, kRx };

struct SlotState {
  SlotRole role = SlotRole::kFree;
  // kRx: first-heard reserving transmitter. kTx: unused.
  int peer = -1;
  // kTx: planned beam and receivers.
  int beam_sector = -1;
  double beamwidth_deg = 0.0;
  std::vector<int> receivers;
};

// Per-vehicle per-interval commitments, driven by heard announcements.
struct ReservationTable {
  int owner = 0;
  std::vector<SlotState> slots;

  explicit ReservationTable(int owner_id = 0, int interval_count = 5)
      : owner(owner_id), slots(static_cast<size_t>(interval_count)) {}
};

// The intervals a transmitter may still use, ascending.
struct IntervalAvailability {
  std::vector<int> available;

  int count() const { return static_cast<int>(available.size()); }
};

struct BeamGroup {
  int beam_sector = 0;
  int interval_index = 0;
  std::vector<int> receiver_ids;
};

// One period's transmission plan: a single beamwidth and the per-interval
// beam groups, in clockwise sector order.
struct BeamPlan {
  double beamwidth_deg = 0.0;
  std::vector<BeamGroup> groups;

  int contacted_count() const;
};

// Intervals not reserved for receiving, in ascending order.
IntervalAvailability check_sched_tx(const ReservationTable& table,
                                    const SchedulingPeriod& period);

// Number of beams needed to contact all neighbors at the given beamwidth:
// neighbors whose bearings share a sector share a beam.
int beams_needed(const NeighborTable& neighbors, double beamwidth_deg,
                 const SectorAntenna& antenna);

// First ladder entry whose beam count fits the available intervals, or
// nullopt when no interval is available for a non-empty neighbor set.
std::optional<double> min_beamwidth(const NeighborTable& neighbors,
                                    const IntervalAvailability& avail,
                                    const SectorAntenna& antenna);

// Groups the neighbors by sector at the chosen beamwidth and assigns the
// groups, in ascending sector order, to the available intervals in order.
// Throws CapacityError when the groups do not fit.
BeamPlan schedule_tx(const NeighborTable& neighbors, double beamwidth_deg,
                     const IntervalAvailability& avail, const SectorAntenna& antenna);

// Fixed 6-degree policy: one receiver per interval, taken in clockwise
// bearing order, min(N, F) receivers in total.
BeamPlan baseline_schedule(const NeighborTable& neighbors,
                           const IntervalAvailability& avail,
                           const SectorAntenna& antenna);

// Fraction of neighbors covered by the plan; 1 when there are none.
double contacted_ratio(const BeamPlan& plan, const NeighborTable& neighbors);

}  // namespace beamsim
