#include "beamsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numeric>
#include <ostream>

#include "beamsim/errors.hpp"

namespace beamsim {

double percentile(std::span<const double> sorted_samples, double p) {
  const size_t n = sorted_samples.size();
  if (n == 0) throw EmptyDataError("percentile of an empty sample set");
  size_t rank = static_cast<size_t>(std::ceil(p * static_cast<double>(n)));
  rank = std::clamp<size_t>(rank, 1, n);
  return sorted_samples[rank - 1];
}

BoxStats box_stats(std::vector<double> samples) {
  if (samples.empty()) throw EmptyDataError("box statistics of an empty sample set");
  std::sort(samples.begin(), samples.end());
  BoxStats stats;
  stats.p5 = percentile(samples, 0.05);
  stats.p25 = percentile(samples, 0.25);
  stats.median = percentile(samples, 0.50);
  stats.p75 = percentile(samples, 0.75);
  stats.p95 = percentile(samples, 0.95);
  stats.mean = std::accumulate(samples.begin(), samples.end(), 0.0) /
               static_cast<double>(samples.size());
  return stats;
}

BoxStats contacted_stats(std::span<const PeriodRecord> records) {
  std::vector<double> ratios;
  for (const PeriodRecord& record : records) {
    for (const TxRecord& tx : record.transmitters) {
      ratios.push_back(static_cast<double>(tx.contacted) /
                       static_cast<double>(tx.neighbor_count));
    }
  }
  return box_stats(std::move(ratios));
}

std::vector<CdfPoint> beamwidth_cdf(std::span<const PeriodRecord> records,
                                    const BeamwidthLadder& ladder) {
  std::map<double, long> counts;
  long total = 0;
  for (const PeriodRecord& record : records) {
    for (const TxRecord& tx : record.transmitters) {
      if (!tx.beamwidth_deg.has_value() || tx.used_intervals == 0) continue;
      counts[*tx.beamwidth_deg] += tx.used_intervals;
      total += tx.used_intervals;
    }
  }
  std::vector<CdfPoint> cdf;
  if (total == 0) return cdf;
  const double widest_used = counts.rbegin()->first;
  long running = 0;
  for (double width : ladder.entries()) {
    if (width > widest_used) break;
    const auto it = counts.find(width);
    if (it != counts.end()) running += it->second;
    cdf.push_back({width, static_cast<double>(running) / static_cast<double>(total)});
  }
  return cdf;
}

BoxStats pdr_stats(std::span<const PeriodRecord> records, const PhyConfig& phy) {
  std::vector<double> pdr;
  for (const PeriodRecord& record : records) {
    for (const TxRecord& tx : record.transmitters) {
      for (const LinkSample& s : tx.samples) {
        pdr.push_back(100.0 * static_cast<double>(s.delivered_packets) /
                      static_cast<double>(phy.packets_per_interval));
      }
    }
  }
  return box_stats(std::move(pdr));
}

double aggregated_throughput_mbps(std::span<const PeriodRecord> records,
                                  const PhyConfig& phy, double sim_duration_s) {
  if (!(sim_duration_s > 0.0)) throw InvalidArgument("duration must be positive");
  double delivered_bits = 0.0;
  for (const PeriodRecord& record : records) {
    for (const TxRecord& tx : record.transmitters) {
      for (const LinkSample& s : tx.samples) {
        delivered_bits += static_cast<double>(s.delivered_packets) * phy.packet_bytes * 8.0;
      }
    }
  }
  return delivered_bits / sim_duration_s / 1e6;
}

double throughput_gain_percent(std::span<const PeriodRecord> adaptive_records,
                               std::span<const PeriodRecord> baseline_records,
                               const PhyConfig& phy, double sim_duration_s) {
  const double adaptive = aggregated_throughput_mbps(adaptive_records, phy, sim_duration_s);
  const double baseline = aggregated_throughput_mbps(baseline_records, phy, sim_duration_s);
  if (baseline <= 0.0) {
    throw UndefinedGainError("baseline throughput is zero, gain undefined");
  }
  return (adaptive - baseline) / baseline * 100.0;
}

double mean_receivers_per_interval(std::span<const PeriodRecord> records) {
  long contacted = 0;
  long used = 0;
  for (const PeriodRecord& record : records) {
    for (const TxRecord& tx : record.transmitters) {
      contacted += tx.contacted;
      used += tx.used_intervals;
    }
  }
  return used == 0 ? 0.0 : static_cast<double>(contacted) / static_cast<double>(used);
}

MetricsReport build_report(const SimResult& result, const SimConfig& config,
                           int replications) {
  MetricsReport report;
  report.density_veh_per_km = config.scenario.density_veh_per_km;
  report.tx_ratio = config.scenario.tx_ratio;
  report.policy = result.policy;
  report.contacted = contacted_stats(result.records);
  report.beamwidth_cdf = beamwidth_cdf(result.records, config.ladder);
  report.pdr_percent = pdr_stats(result.records, config.phy);
  const double duration_s =
      static_cast<double>(config.periods) * replications * config.period.period_ms / 1e3;
  report.aggregated_throughput_mbps =
      aggregated_throughput_mbps(result.records, config.phy, duration_s);
  report.mean_receivers_per_interval = mean_receivers_per_interval(result.records);
  return report;
}

namespace {

nlohmann::json box_to_json(const BoxStats& box) {
  return {{"p5", box.p5},   {"p25", box.p25}, {"median", box.median},
          {"p75", box.p75}, {"p95", box.p95}, {"mean", box.mean}};
}

void print_row(std::ostream& out, std::initializer_list<double> values) {
  char buf[64];
  bool first = true;
  for (double v : values) {
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    if (!first) out << ' ';
    out << buf;
    first = false;
  }
  out << '\n';
}

}  // namespace

nlohmann::json report_to_json(const MetricsReport& report) {
  nlohmann::json cdf = nlohmann::json::array();
  for (const CdfPoint& point : report.beamwidth_cdf) {
    cdf.push_back({{"beamwidth_deg", point.beamwidth_deg},
                   {"cumulative_fraction", point.cumulative_fraction}});
  }
  return {{"density_veh_per_km", report.density_veh_per_km},
          {"tx_ratio", report.tx_ratio},
          {"policy", to_string(report.policy)},
          {"contacted_ratio", box_to_json(report.contacted)},
          {"beamwidth_cdf", std::move(cdf)},
          {"pdr_percent", box_to_json(report.pdr_percent)},
          {"aggregated_throughput_mbps", report.aggregated_throughput_mbps},
          {"mean_receivers_per_interval", report.mean_receivers_per_interval}};
}

void write_contacted_box_dat(std::ostream& out, const MetricsReport& report) {
  out << "# density tx_ratio p5 p25 median p75 p95 mean\n";
  const BoxStats& b = report.contacted;
  print_row(out, {report.density_veh_per_km, report.tx_ratio, b.p5, b.p25, b.median, b.p75,
                  b.p95, b.mean});
}

void write_beamwidth_cdf_dat(std::ostream& out, const MetricsReport& report) {
  out << "# beamwidth_deg cumulative_fraction\n";
  for (const CdfPoint& point : report.beamwidth_cdf) {
    print_row(out, {point.beamwidth_deg, point.cumulative_fraction});
  }
}

void write_pdr_box_dat(std::ostream& out, const MetricsReport& report) {
  out << "# density tx_ratio p5 p25 median p75 p95 mean\n";
  const BoxStats& b = report.pdr_percent;
  print_row(out, {report.density_veh_per_km, report.tx_ratio, b.p5, b.p25, b.median, b.p75,
                  b.p95, b.mean});
}

void write_throughput_dat(std::ostream& out, const MetricsReport& report,
                          double gain_percent) {
  out << "# density tx_ratio throughput_mbps gain_vs_baseline_pct\n";
  print_row(out, {report.density_veh_per_km, report.tx_ratio,
                  report.aggregated_throughput_mbps, gain_percent});
}

}  // namespace beamsim
