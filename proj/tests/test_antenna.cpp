#include <doctest.h>

#include <cmath>
#include <set>

#include "beamsim/antenna.hpp"
#include "beamsim/errors.hpp"
#include "oracles.hpp"

using namespace beamsim;

namespace {
const SectorAntenna& antenna() {
  static SectorAntenna a;
  return a;
}
}  // namespace

TEST_CASE("default ladder matches the configured beamwidth set") {
  const std::vector<double> expected{6, 12, 18, 24, 30, 36, 60, 72, 90, 120, 180, 360};
  CHECK(BeamwidthLadder().entries() == expected);
}

TEST_CASE("ladder validation") {
  CHECK_THROWS_AS(BeamwidthLadder({12, 6}, 6.0), InvalidArgument);       // not ascending
  CHECK_THROWS_AS(BeamwidthLadder({7, 14}, 7.0), InvalidArgument);      // 7 not into 360
  CHECK_THROWS_AS(BeamwidthLadder({6, 15}, 6.0), InvalidArgument);      // 15 not k*6
  CHECK_THROWS_AS(BeamwidthLadder({}, 6.0), InvalidArgument);           // empty
  CHECK_NOTHROW(BeamwidthLadder({10, 20, 40}, 10.0));
}

TEST_CASE("sector_count for known groupings") {
  CHECK(antenna().sector_count(6.0) == 60);
  CHECK(antenna().sector_count(12.0) == 30);
  CHECK(antenna().sector_count(360.0) == 1);
  CHECK_THROWS_AS(antenna().sector_count(7.0), InvalidBeamwidth);
}

TEST_CASE("sector_index fixed cases") {
  CHECK(antenna().sector_index(normalize_bearing(10.0), 6.0) == 1);
  CHECK(antenna().sector_index(normalize_bearing(0.0), 6.0) == 0);
  CHECK(antenna().sector_index(normalize_bearing(359.9), 360.0) == 0);
  // Lower edge inclusive: a boundary bearing belongs to the upper sector.
  CHECK(antenna().sector_index(normalize_bearing(6.0), 6.0) == 1);
  CHECK(antenna().sector_index(normalize_bearing(359.999), 6.0) == 59);
}

TEST_CASE("gain_dbi flat-top values") {
  const double offset = antenna().model().gain_offset_db;
  CHECK(antenna().gain_dbi(6.0) ==
        doctest::Approx(offset + 17.7815125).epsilon(1e-9));
  CHECK(antenna().gain_dbi(360.0) == doctest::Approx(offset).epsilon(1e-12));
  CHECK(antenna().gain_dbi(12.0) ==
        doctest::Approx(offset + 14.7712125).epsilon(1e-8));
}

TEST_CASE("energy conservation across the ladder") {
  const double reference =
      antenna().gain_dbi(360.0) + 10.0 * std::log10(360.0);
  for (double width : antenna().ladder().entries()) {
    const double total = antenna().gain_dbi(width) + 10.0 * std::log10(width);
    CHECK(std::fabs(total - reference) < 1e-9);
  }
}

TEST_CASE("beam_covers is consistent with sector_index") {
  CHECK(antenna().beam_covers(1, 6.0, normalize_bearing(10.0)));
  CHECK_FALSE(antenna().beam_covers(0, 6.0, normalize_bearing(10.0)));
  CHECK(antenna().beam_covers(0, 360.0, normalize_bearing(123.4)));
  CHECK_THROWS_AS(antenna().beam_covers(60, 6.0, normalize_bearing(0.0)),
                  InvalidArgument);
}

TEST_CASE("sector partition covers every bearing exactly once") {
  for (double width : antenna().ladder().entries()) {
    const int sectors = antenna().sector_count(width);
    for (double b = 0.0; b < 360.0; b += 0.5) {
      const Bearing bearing = normalize_bearing(b);
      int covering = 0;
      for (int s = 0; s < sectors; ++s) {
        if (antenna().beam_covers(s, width, bearing)) ++covering;
      }
      CHECK(covering == 1);
    }
  }
}

TEST_CASE("every ladder sector is a union of consecutive base sectors") {
  for (double width : antenna().ladder().entries()) {
    const int group = static_cast<int>(std::lround(width / 6.0));
    for (int base = 0; base < 60; ++base) {
      const Bearing center = normalize_bearing(base * 6.0 + 3.0);
      CHECK(antenna().sector_index(center, width) == base / group);
    }
  }
}

TEST_CASE("occupied sector count is not monotone in beamwidth") {
  // The witness pair occupies one 12-degree sector but two 18-degree ones.
  const std::vector<double> bearings{17.0, 19.0};
  CHECK(oracle::beams_needed(bearings, 12.0) == 1);
  CHECK(oracle::beams_needed(bearings, 18.0) == 2);
}

TEST_CASE("boresight reference shifts sector boundaries") {
  AntennaModel model;
  model.boresight_reference_deg = 3.0;
  const SectorAntenna shifted{BeamwidthLadder(), model};
  CHECK(shifted.sector_index(normalize_bearing(3.0), 6.0) == 0);
  CHECK(shifted.sector_index(normalize_bearing(2.9), 6.0) == 59);
}

TEST_CASE("antenna model must agree with the ladder base") {
  AntennaModel model;
  model.base_sector_count = 30;
  CHECK_THROWS_AS(SectorAntenna(BeamwidthLadder(), model), InvalidArgument);
}
