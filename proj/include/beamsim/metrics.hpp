#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "beamsim/sim.hpp"

namespace beamsim {

// Box-plot statistics: mean plus the 5/25/50/75/95 percentiles.
struct BoxStats {
  double p5 = 0.0;
  double p25 = 0.0;
  double median = 0.0;
  double p75 = 0.0;
  double p95 = 0.0;
  double mean = 0.0;
};

struct CdfPoint {
  double beamwidth_deg = 0.0;
  double cumulative_fraction = 0.0;
};

struct MetricsReport {
  double density_veh_per_km = 0.0;
  double tx_ratio = 0.0;
  Policy policy = Policy::kAdaptive;
  BoxStats contacted;            // per-transmitter per-period ratios
  std::vector<CdfPoint> beamwidth_cdf;
  BoxStats pdr_percent;          // per (tx, rx, interval) samples
  double aggregated_throughput_mbps = 0.0;
  double mean_receivers_per_interval = 0.0;
};

// Nearest-rank percentile: value at index ceil(p * n), 1-based, clamped.
// Samples must be sorted ascending; throws EmptyDataError when empty.
double percentile(std::span<const double> sorted_samples, double p);

// Sorts a copy of the samples and fills all six statistics.
BoxStats box_stats(std::vector<double> samples);

// Box statistics of the contacted-neighbor ratio over all records.
BoxStats contacted_stats(std::span<const PeriodRecord> records);

// Empirical CDF of the chosen beamwidth; every scheduled transmission (one
// per used interval) contributes one sample at its period's beamwidth.
std::vector<CdfPoint> beamwidth_cdf(std::span<const PeriodRecord> records,
                                    const BeamwidthLadder& ladder);

// Box statistics of the per-(tx, rx, interval) delivery ratio, in percent,
// over contacted receivers.
BoxStats pdr_stats(std::span<const PeriodRecord> records, const PhyConfig& phy);

// Total correctly received bits per second across the scenario.
double aggregated_throughput_mbps(std::span<const PeriodRecord> records,
                                  const PhyConfig& phy, double sim_duration_s);

// Relative throughput increase of the adaptive policy, in percent.
// Throws UndefinedGainError when the baseline delivered nothing.
double throughput_gain_percent(std::span<const PeriodRecord> adaptive_records,
                               std::span<const PeriodRecord> baseline_records,
                               const PhyConfig& phy, double sim_duration_s);

// Sum of contacted receivers over the sum of used intervals.
double mean_receivers_per_interval(std::span<const PeriodRecord> records);

MetricsReport build_report(const SimResult& result, const SimConfig& config,
                           int replications);

nlohmann::json report_to_json(const MetricsReport& report);

// gnuplot-ready outputs: whitespace-separated columns under a '#' header.
void write_contacted_box_dat(std::ostream& out, const MetricsReport& report);
void write_beamwidth_cdf_dat(std::ostream& out, const MetricsReport& report);
void write_pdr_box_dat(std::ostream& out, const MetricsReport& report);
void write_throughput_dat(std::ostream& out, const MetricsReport& report,
                          double gain_percent);

}  // namespace beamsim
