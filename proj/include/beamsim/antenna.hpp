#pragma once

#include <vector>

#include "beamsim/geometry.hpp"

namespace beamsim {

// Ordered set of selectable transmit beamwidths, in degrees. Entries are
// strictly ascending, divide 360 exactly, and are integer multiples of the
// base beamwidth.
class BeamwidthLadder {
 public:
  // The default ladder of a 60-sector antenna grouped into
  // 30/20/15/12/10/6/5/4/3/2/1 sectors.
  BeamwidthLadder();
  BeamwidthLadder(std::vector<double> entries, double base_deg);

  const std::vector<double>& entries() const { return entries_; }
  double base_deg() const { return base_deg_; }
  double widest() const { return entries_.back(); }
  bool contains(double beamwidth_deg) const;

 private:
  std::vector<double> entries_;
  double base_deg_ = 6.0;
};

struct AntennaModel {
  int base_sector_count = 60;
  // Bearing of the sector-0 lower edge, relative to the vehicle heading.
  double boresight_reference_deg = 0.0;
  // Calibration constant added to the flat-top directivity, in dB.
  double gain_offset_db = 14.0;
};

// Sector-grouping antenna: the horizontal plane is divided into
// base_sector_count equal sectors which can be grouped into wider beams.
// The radiation pattern is an ideal flat top: constant gain inside the
// beam, no radiation outside.
class SectorAntenna {
 public:
  explicit SectorAntenna(BeamwidthLadder ladder = BeamwidthLadder(),
                         AntennaModel model = AntennaModel());

  const BeamwidthLadder& ladder() const { return ladder_; }
  const AntennaModel& model() const { return model_; }

  // Number of sectors at the given beamwidth (360 / beamwidth).
  int sector_count(double beamwidth_deg) const;

  // Sector containing the bearing; lower edge inclusive, so a bearing on a
  // boundary belongs to the higher-index sector.
  int sector_index(Bearing bearing, double beamwidth_deg) const;

  // Flat-top gain inside a beam of the given width, in dBi.
  double gain_dbi(double beamwidth_deg) const;

  // True iff the target bearing falls inside the given beam sector.
  bool beam_covers(int beam_sector, double beamwidth_deg, Bearing target) const;

 private:
  void require_in_ladder(double beamwidth_deg) const;

  BeamwidthLadder ladder_;
  AntennaModel model_;
};

}  // namespace beamsim
