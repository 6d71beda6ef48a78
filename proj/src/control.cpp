#include "beamsim/control.hpp"

#include <algorithm>
#include <ostream>

#include "beamsim/errors.hpp"

namespace beamsim {

Announcement Announcement::from_plan(int tx, int period_index, const BeamPlan& plan,
                                     const SchedulingPeriod& period) {
  Announcement ann;
  ann.tx_id = tx;
  ann.period_index = period_index;
  ann.start_time_ms = period_index * period.period_ms;
  ann.duration_ms = period.interval_ms;
  for (const BeamGroup& group : plan.groups) {
    ann.entries.push_back(
        {group.interval_index, group.receiver_ids, group.beam_sector, plan.beamwidth_deg});
  }
  return ann;
}

std::vector<std::pair<double, int>> cam_schedule(std::span<const Vehicle> vehicles,
                                                 int periods, double period_ms) {
  std::vector<std::pair<double, int>> schedule;
  schedule.reserve(vehicles.size() * static_cast<size_t>(periods));
  for (int p = 0; p < periods; ++p) {
    for (const Vehicle& v : vehicles) {
      schedule.emplace_back(p * period_ms + v.cam_offset_ms, v.id);
    }
  }
  std::sort(schedule.begin(), schedule.end());
  return schedule;
}

std::set<int> deliver_broadcast(const Cam& cam, std::span<const Vehicle> all,
                                double control_range_m, double road_length_m) {
  std::set<int> recipients;
  for (const Vehicle& v : all) {
    if (v.id == cam.sender) continue;
    if (wraparound_distance(cam.position, v.position(), road_length_m) <=
        control_range_m) {
      recipients.insert(v.id);
    }
  }
  return recipients;
}

void apply_announcement(ReservationTable& table, const Announcement& ann,
                        double rx_time_ms, std::vector<ControlEvent>* events) {
  const auto log = [&](ControlEventType type, int interval) {
    if (events != nullptr) {
      events->push_back({rx_time_ms, type, ann.tx_id, table.owner, interval});
    }
  };
  const int k = static_cast<int>(table.slots.size());
  for (const AnnouncementEntry& entry : ann.entries) {
    if (entry.interval_index < 0 || entry.interval_index >= k) {
      throw ProtocolError("announcement interval index out of range");
    }
    SlotState& slot = table.slots[static_cast<size_t>(entry.interval_index)];
    if (ann.tx_id == table.owner) {
      // Own announcement: commit the transmit slots.
      slot.role = SlotRole::kTx;
      slot.peer = -1;
      slot.beam_sector = entry.beam_sector;
      slot.beamwidth_deg = entry.beamwidth_deg;
      slot.receivers = entry.receiver_ids;
      continue;
    }
    const bool addressed = std::find(entry.receiver_ids.begin(), entry.receiver_ids.end(),
                                     table.owner) != entry.receiver_ids.end();
    if (!addressed) continue;
    switch (slot.role) {
      case SlotRole::kFree:
        slot.role = SlotRole::kRx;
        slot.peer = ann.tx_id;
        log(ControlEventType::kReservation, entry.interval_index);
        break;
      case SlotRole::kRx:
        // First-heard reservation wins.
        log(ControlEventType::kConflict, entry.interval_index);
        break;
      case SlotRole::kTx:
        // The owner already committed to transmit; the reception is lost.
        log(ControlEventType::kForfeit, entry.interval_index);
        break;
    }
  }
}

void write_event_log_csv(std::ostream& out, std::span<const ControlEvent> events) {
  out << "time_ms,event,sender,receiver,interval\n";
  for (const ControlEvent& e : events) {
    const char* name = "cam";
    switch (e.type) {
      case ControlEventType::kCam: name = "cam"; break;
      case ControlEventType::kReservation: name = "reservation"; break;
      case ControlEventType::kConflict: name = "conflict"; break;
      case ControlEventType::kForfeit: name = "forfeit"; break;
    }
    out << e.time_ms << ',' << name << ',' << e.sender << ',' << e.receiver << ','
        << e.interval << '\n';
  }
}

}  // namespace beamsim
