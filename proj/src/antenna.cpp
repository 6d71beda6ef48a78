#include "beamsim/antenna.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "beamsim/errors.hpp"

namespace beamsim {

namespace {

bool is_near_integer(double v) {
  return std::fabs(v - std::round(v)) < 1e-9;
}

}  // namespace

BeamwidthLadder::BeamwidthLadder()
    : BeamwidthLadder({6, 12, 18, 24, 30, 36, 60, 72, 90, 120, 180, 360}, 6.0) {}

BeamwidthLadder::BeamwidthLadder(std::vector<double> entries, double base_deg)
    : entries_(std::move(entries)), base_deg_(base_deg) {
  if (entries_.empty()) throw InvalidArgument("beamwidth ladder is empty");
  if (!(base_deg_ > 0.0) || !is_near_integer(360.0 / base_deg_)) {
    throw InvalidArgument("base beamwidth must divide 360");
  }
  double prev = 0.0;
  for (double e : entries_) {
    if (!(e > prev)) throw InvalidArgument("ladder entries must be strictly ascending");
    if (!is_near_integer(360.0 / e)) {
      throw InvalidArgument("ladder entry " + std::to_string(e) + " does not divide 360");
    }
    if (!is_near_integer(e / base_deg_)) {
      throw InvalidArgument("ladder entry " + std::to_string(e) +
                            " is not a multiple of the base beamwidth");
    }
    prev = e;
  }
}

bool BeamwidthLadder::contains(double beamwidth_deg) const {
  return std::find(entries_.begin(), entries_.end(), beamwidth_deg) != entries_.end();
}

SectorAntenna::SectorAntenna(BeamwidthLadder ladder, AntennaModel model)
    : ladder_(std::move(ladder)), model_(model) {
  const double base = 360.0 / model_.base_sector_count;
  if (std::fabs(base - ladder_.base_deg()) > 1e-9) {
    throw InvalidArgument("base sector count does not match the ladder base beamwidth");
  }
}

void SectorAntenna::require_in_ladder(double beamwidth_deg) const {
  if (!ladder_.contains(beamwidth_deg)) {
    throw InvalidBeamwidth("beamwidth " + std::to_string(beamwidth_deg) +
                           " deg is not in the ladder");
  }
}

int SectorAntenna::sector_count(double beamwidth_deg) const {
  require_in_ladder(beamwidth_deg);
  return static_cast<int>(std::lround(360.0 / beamwidth_deg));
}

int SectorAntenna::sector_index(Bearing bearing, double beamwidth_deg) const {
  const int count = sector_count(beamwidth_deg);
  const double relative =
      normalize_bearing(bearing.degrees() - model_.boresight_reference_deg).degrees();
  int idx = static_cast<int>(relative / beamwidth_deg);
  if (idx >= count) idx = count - 1;  // guard against rounding at 360
  return idx;
}

double SectorAntenna::gain_dbi(double beamwidth_deg) const {
  require_in_ladder(beamwidth_deg);
  return 10.0 * std::log10(360.0 / beamwidth_deg) + model_.gain_offset_db;
}

bool SectorAntenna::beam_covers(int beam_sector, double beamwidth_deg,
                                Bearing target) const {
  const int count = sector_count(beamwidth_deg);
  if (beam_sector < 0 || beam_sector >= count) {
    throw InvalidArgument("beam sector " + std::to_string(beam_sector) +
                          " out of range for beamwidth " + std::to_string(beamwidth_deg));
  }
  return sector_index(target, beamwidth_deg) == beam_sector;
}

}  // namespace beamsim
