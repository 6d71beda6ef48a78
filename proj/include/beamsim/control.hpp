#pragma once

#include <optional>
#include <set>
#include <vector>

#include "beamsim/scenario.hpp"
#include "beamsim/scheduler.hpp"

namespace beamsim {

struct AnnouncementEntry {
  int interval_index = 0;
  std::vector<int> receiver_ids;
  int beam_sector = 0;
  double beamwidth_deg = 0.0;
};

// Scheduling decision broadcast inside a CAM: the scheduled receivers, the
// instant the data transmission starts, and its duration.
struct Announcement {
  int tx_id = 0;
  int period_index = 0;  // the period whose intervals are reserved
  std::vector<AnnouncementEntry> entries;
  double start_time_ms = 0.0;  // start of the reserved period
  double duration_ms = 0.0;    // per-entry burst duration (one interval)

  static Announcement from_plan(int tx_id, int period_index, const BeamPlan& plan,
                                const SchedulingPeriod& period);
};

struct Cam {
  int sender = 0;
  double timestamp_ms = 0.0;
  Vec2 position;
  std::optional<Announcement> announcement;
};

enum class ControlEventType { kCam, kReservation, kConflict, kForfeit };

struct ControlEvent {
  double time_ms = 0.0;
  ControlEventType type = ControlEventType::kCam;
  int sender = -1;
  int receiver = -1;
  int interval = -1;
};

// One CAM emission per vehicle per period at its CAM offset, for
// `periods` consecutive periods. Sorted by time, ties by vehicle id.
std::vector<std::pair<double, int>> cam_schedule(std::span<const Vehicle> vehicles,
                                                 int periods = 1,
                                                 double period_ms = 100.0);

// Ideal sub-6GHz broadcast: every other vehicle within control range on the
// ring road receives the CAM instantly and losslessly.
std::set<int> deliver_broadcast(const Cam& cam, std::span<const Vehicle> all,
                                double control_range_m, double road_length_m);

// Applies an announcement to the table of one vehicle (the announcer marks
// its own tx slots; an addressed receiver marks rx slots). First-heard rx
// reservation wins; a slot already committed to transmit is never changed.
// Emitted events are appended to `events` when non-null.
void apply_announcement(ReservationTable& table, const Announcement& ann,
                        double rx_time_ms, std::vector<ControlEvent>* events = nullptr);

void write_event_log_csv(std::ostream& out, std::span<const ControlEvent> events);

}  // namespace beamsim
