#include "beamsim/phy.hpp"

#include <cmath>
#include <limits>
#include <ostream>

#include "beamsim/errors.hpp"

namespace beamsim {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
}  // namespace

double PhyConfig::burst_airtime_ms() const {
  const double bits = static_cast<double>(packets_per_interval) * packet_bytes * 8.0;
  return bits / (data_rate_mbps * 1e6) * 1e3;
}

void PhyConfig::validate(double interval_ms) const {
  if (!(carrier_hz > 0.0)) throw ConfigError("carrier frequency must be positive");
  if (!(data_rate_mbps > 0.0)) throw ConfigError("data rate must be positive");
  if (packet_bytes <= 0) throw ConfigError("packet size must be positive");
  if (packets_per_interval <= 0) throw ConfigError("packets per interval must be positive");
  if (!(noise_bandwidth_hz > 0.0)) throw ConfigError("noise bandwidth must be positive");
  if (!(rx_beamwidth_deg > 0.0)) throw ConfigError("receive beamwidth must be positive");
  if (burst_airtime_ms() > interval_ms) {
    throw ConfigError("burst airtime exceeds the scheduling interval");
  }
}

const char* to_string(LinkOutcome outcome) {
  switch (outcome) {
    case LinkOutcome::kOk: return "ok";
    case LinkOutcome::kSinrFail: return "sinr_fail";
    case LinkOutcome::kConflictLoss: return "conflict_loss";
    case LinkOutcome::kForfeitLoss: return "forfeit_loss";
  }
  return "unknown";
}

double path_loss_db(double distance_m, const PhyConfig& phy) {
  if (!(distance_m > 0.0)) throw InvalidArgument("path loss needs a positive distance");
  return 20.0 * std::log10(distance_m) + 20.0 * std::log10(phy.carrier_hz) - 147.55;
}

double noise_floor_dbm(const PhyConfig& phy) {
  return -174.0 + 10.0 * std::log10(phy.noise_bandwidth_hz) + phy.noise_figure_db;
}

std::optional<double> rx_power_dbm(const Topology& topology, int tx_id, int rx_id,
                                   int tx_beam_sector, double tx_beamwidth_deg,
                                   Bearing rx_pointing, const SectorAntenna& antenna,
                                   const PhyConfig& phy) {
  // Receive side first: a 6-degree cone kills most candidate couplings.
  const Bearing to_tx = topology.bearing_from(rx_id, tx_id);
  if (angular_distance_deg(to_tx, rx_pointing) > phy.rx_beamwidth_deg / 2.0) {
    return std::nullopt;
  }
  const Bearing to_rx = topology.bearing_from(tx_id, rx_id);
  if (!antenna.beam_covers(tx_beam_sector, tx_beamwidth_deg, to_rx)) {
    return std::nullopt;
  }
  if (!topology.los(tx_id, rx_id)) {
    return std::nullopt;
  }
  const double distance = topology.distance(tx_id, rx_id);
  return phy.tx_power_dbm + antenna.gain_dbi(tx_beamwidth_deg) +
         antenna.gain_dbi(phy.rx_beamwidth_deg) - path_loss_db(distance, phy);
}

double sinr_db(const Topology& topology, int rx_id, const ActiveTransmission& intended,
               std::span<const ActiveTransmission> concurrent,
               const SectorAntenna& antenna, const PhyConfig& phy) {
  const Bearing pointing = topology.bearing_from(rx_id, intended.tx_id);
  const std::optional<double> signal =
      rx_power_dbm(topology, intended.tx_id, rx_id, intended.beam_sector,
                   intended.beamwidth_deg, pointing, antenna, phy);
  if (!signal.has_value()) return -kInf;

  double interference_mw = 0.0;
  for (const ActiveTransmission& other : concurrent) {
    if (other.tx_id == intended.tx_id) continue;
    const std::optional<double> power =
        rx_power_dbm(topology, other.tx_id, rx_id, other.beam_sector,
                     other.beamwidth_deg, pointing, antenna, phy);
    if (power.has_value()) interference_mw += dbm_to_mw(*power);
  }
  const double noise_mw = dbm_to_mw(noise_floor_dbm(phy));
  return 10.0 * std::log10(dbm_to_mw(*signal) / (noise_mw + interference_mw));
}

std::vector<LinkSample> interval_outcomes(int period_index, int interval_index,
                                          std::span<const ActiveTransmission> transmissions,
                                          const Topology& topology,
                                          std::span<const ReservationTable> tables,
                                          const SectorAntenna& antenna,
                                          const PhyConfig& phy) {
  std::vector<LinkSample> samples;
  for (const ActiveTransmission& t : transmissions) {
    for (int rx : t.receiver_ids) {
      LinkSample sample;
      sample.period_index = period_index;
      sample.interval_index = interval_index;
      sample.tx_id = t.tx_id;
      sample.rx_id = rx;
      sample.distance_m = topology.distance(t.tx_id, rx);
      sample.tx_beamwidth_deg = t.beamwidth_deg;
      sample.sinr_db = -kInf;
      sample.delivered_packets = 0;

      const SlotState& slot =
          tables[static_cast<size_t>(rx)].slots[static_cast<size_t>(interval_index)];
      if (slot.role == SlotRole::kTx) {
        // The receiver committed to its own transmission before this
        // reservation arrived.
        sample.outcome = LinkOutcome::kForfeitLoss;
      } else if (slot.role == SlotRole::kRx && slot.peer == t.tx_id) {
        sample.sinr_db = sinr_db(topology, rx, t, transmissions, antenna, phy);
        if (sample.sinr_db >= phy.sinr_threshold_db) {
          sample.delivered_packets = phy.packets_per_interval;
          sample.outcome = LinkOutcome::kOk;
        } else {
          sample.outcome = LinkOutcome::kSinrFail;
        }
      } else {
        // The receiver's beam points at another, first-heard transmitter.
        sample.outcome = LinkOutcome::kConflictLoss;
      }
      samples.push_back(std::move(sample));
    }
  }
  return samples;
}

double calibrate_gain_offset_db(const PhyConfig& phy, double link_distance_m,
                                double widest_beamwidth_deg) {
  // Margin equation for the worst link: widest transmit beam over the full
  // neighbor range, the offset counted once.
  const double rx_directivity = 10.0 * std::log10(360.0 / phy.rx_beamwidth_deg);
  const double tx_directivity = 10.0 * std::log10(360.0 / widest_beamwidth_deg);
  const double snr_without_offset = phy.tx_power_dbm + tx_directivity + rx_directivity -
                                    path_loss_db(link_distance_m, phy) -
                                    noise_floor_dbm(phy);
  const double required = phy.sinr_threshold_db + 3.0;
  return std::max(0.0, std::ceil(required - snr_without_offset));
}

void write_link_log_csv(std::ostream& out, std::span<const LinkSample> samples) {
  out << "period,interval,tx,rx,distance_m,tx_beamwidth,sinr_db,delivered,outcome\n";
  for (const LinkSample& s : samples) {
    out << s.period_index << ',' << s.interval_index << ',' << s.tx_id << ',' << s.rx_id
        << ',' << s.distance_m << ',' << s.tx_beamwidth_deg << ',' << s.sinr_db << ','
        << s.delivered_packets << ',' << to_string(s.outcome) << '\n';
  }
}

}  // namespace beamsim
