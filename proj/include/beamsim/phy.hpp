#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "beamsim/antenna.hpp"
#include "beamsim/scenario.hpp"
#include "beamsim/scheduler.hpp"

namespace beamsim {

struct PhyConfig {
  double carrier_hz = 60.48e9;
  double tx_power_dbm = 10.0;
  double data_rate_mbps = 693.0;
  int packet_bytes = 1600;
  int packets_per_interval = 250;
  double noise_bandwidth_hz = 2.16e9;
  double noise_figure_db = 10.0;
  double sinr_threshold_db = 7.0;
  double rx_beamwidth_deg = 6.0;

  double burst_airtime_ms() const;
  // Throws ConfigError when the burst does not fit one interval.
  void validate(double interval_ms) const;
};

// One beam group on air during one interval.
struct ActiveTransmission {
  int tx_id = 0;
  int interval_index = 0;
  int beam_sector = 0;
  double beamwidth_deg = 0.0;
  std::vector<int> receiver_ids;
};

enum class LinkOutcome { kOk, kSinrFail, kConflictLoss, kForfeitLoss };

const char* to_string(LinkOutcome outcome);

struct LinkSample {
  int period_index = 0;
  int interval_index = 0;
  int tx_id = 0;
  int rx_id = 0;
  double sinr_db = 0.0;
  int delivered_packets = 0;
  LinkOutcome outcome = LinkOutcome::kOk;
  double distance_m = 0.0;
  double tx_beamwidth_deg = 0.0;
};

// Free-space path loss at the configured carrier.
double path_loss_db(double distance_m, const PhyConfig& phy);

// Thermal noise floor plus noise figure.
double noise_floor_dbm(const PhyConfig& phy);

// Received power over a directional link, or nullopt when the transmit
// beam does not cover the receiver, the receive beam (centered on
// rx_pointing) does not cover the transmitter, or the path is blocked.
std::optional<double> rx_power_dbm(const Topology& topology, int tx_id, int rx_id,
                                   int tx_beam_sector, double tx_beamwidth_deg,
                                   Bearing rx_pointing, const SectorAntenna& antenna,
                                   const PhyConfig& phy);

// SINR of the intended link with every other concurrent transmission as a
// potential interferer. Bursts within an interval overlap completely.
// Returns -infinity when the intended coupling itself is blocked.
double sinr_db(const Topology& topology, int rx_id, const ActiveTransmission& intended,
               std::span<const ActiveTransmission> concurrent,
               const SectorAntenna& antenna, const PhyConfig& phy);

// Delivery outcome of every intended (tx, rx) pair of one interval. Each
// receiver points its beam at the transmitter recorded in its reservation
// table; the tables also mark receivers that are themselves transmitting.
std::vector<LinkSample> interval_outcomes(int period_index, int interval_index,
                                          std::span<const ActiveTransmission> transmissions,
                                          const Topology& topology,
                                          std::span<const ReservationTable> tables,
                                          const SectorAntenna& antenna,
                                          const PhyConfig& phy);

// Smallest integer gain offset (dB) closing an interference-free link of
// the given length at the widest transmit beam, with 3 dB margin over the
// SINR threshold.
double calibrate_gain_offset_db(const PhyConfig& phy, double link_distance_m = 50.0,
                                double widest_beamwidth_deg = 360.0);

// CSV rows: period, interval, tx, rx, distance_m, tx_beamwidth, sinr_db,
// delivered, outcome.
void write_link_log_csv(std::ostream& out, std::span<const LinkSample> samples);

}  // namespace beamsim
