#include "beamsim/manifest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "beamsim/errors.hpp"
#include "beamsim/rng.hpp"

namespace beamsim {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0;
  size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& where, const std::string& value) {
  double out = 0.0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid number for " + where + ": '" + value + "'");
  }
  return out;
}

long long parse_int(const std::string& where, const std::string& value) {
  long long out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid integer for " + where + ": '" + value + "'");
  }
  return out;
}

std::uint64_t parse_u64(const std::string& where, const std::string& value) {
  std::uint64_t out = 0;
  const char* begin = value.data();
  const char* end = begin + value.size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("invalid seed for " + where + ": '" + value + "'");
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& where, const std::string& value) {
  std::vector<double> out;
  std::string item;
  std::stringstream ss(value);
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) throw ConfigError("empty list element for " + where);
    out.push_back(parse_double(where, item));
  }
  if (out.empty()) throw ConfigError("empty list for " + where);
  return out;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Shorten when a compact form round-trips.
  char short_buf[64];
  std::snprintf(short_buf, sizeof(short_buf), "%g", v);
  double back = 0.0;
  std::from_chars(short_buf, short_buf + std::char_traits<char>::length(short_buf), back);
  return back == v ? short_buf : buf;
}

std::string format_list(const std::vector<double>& values) {
  std::string out;
  for (size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ", ";
    out += format_double(values[i]);
  }
  return out;
}

}  // namespace

void RunManifest::validate() const {
  if (periods < 1) throw ConfigError("periods must be >= 1");
  if (replications < 1) throw ConfigError("replications must be >= 1");
  if (parallel < 1) throw ConfigError("parallel must be >= 1");
  if (densities.empty()) throw ConfigError("density list is empty");
  if (tx_ratios.empty()) throw ConfigError("tx_ratio list is empty");
  if (policy != "adaptive" && policy != "baseline" && policy != "both") {
    throw ConfigError("policy must be adaptive, baseline or both");
  }
  if (out_dir.empty()) throw ConfigError("output directory is empty");
  // Probe one full SimConfig so every cross-field constraint is checked
  // before any run starts.
  try {
    for (const RunSpec& spec : expand_runs(*this)) {
      spec.config.validate();
      break;
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

RunManifest parse_manifest(const std::string& content) {
  RunManifest m;
  std::string section = "run";
  std::istringstream in(content);
  std::string raw;
  int line_number = 0;

  const auto fail_unknown = [](const std::string& where) {
    throw ConfigError("unknown configuration key: " + where);
  };

  while (std::getline(in, raw)) {
    ++line_number;
    std::string line = raw;
    const size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("malformed section header at line " + std::to_string(line_number));
      }
      section = trim(line.substr(1, line.size() - 2));
      if (section != "run" && section != "scenario" && section != "period" &&
          section != "phy" && section != "antenna" && section != "ladder") {
        throw ConfigError("unknown configuration section: [" + section + "]");
      }
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("expected key = value at line " + std::to_string(line_number));
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(line_number));
    const std::string where = section + "." + key;

    if (section == "run") {
      if (key == "periods") m.periods = static_cast<int>(parse_int(where, value));
      else if (key == "replications") m.replications = static_cast<int>(parse_int(where, value));
      else if (key == "parallel") m.parallel = static_cast<int>(parse_int(where, value));
      else if (key == "seed") m.master_seed = parse_u64(where, value);
      else if (key == "out") m.out_dir = value;
      else if (key == "policy") m.policy = value;
      else if (key == "control_range_m") m.control_range_m = parse_double(where, value);
      else fail_unknown(where);
    } else if (section == "scenario") {
      if (key == "density") m.densities = parse_double_list(where, value);
      else if (key == "tx_ratio") m.tx_ratios = parse_double_list(where, value);
      else if (key == "lanes") m.scenario.lanes = static_cast<int>(parse_int(where, value));
      else if (key == "lane_width_m") m.scenario.lane_width_m = parse_double(where, value);
      else if (key == "road_length_m") m.scenario.road_length_m = parse_double(where, value);
      else if (key == "neighbor_range_m") m.scenario.neighbor_range_m = parse_double(where, value);
      else if (key == "min_gap_m") m.scenario.min_gap_m = parse_double(where, value);
      else if (key == "vehicle_length_m") m.scenario.footprint.length_m = parse_double(where, value);
      else if (key == "vehicle_width_m") m.scenario.footprint.width_m = parse_double(where, value);
      else if (key == "mobility") {
        if (value == "iid_drops") m.scenario.mobility = Mobility::kIndependentDrops;
        else if (value == "constant_speed") m.scenario.mobility = Mobility::kConstantSpeed;
        else throw ConfigError("mobility must be iid_drops or constant_speed");
      } else if (key == "lane_speeds_mps") {
        m.scenario.lane_speeds_mps = parse_double_list(where, value);
      } else fail_unknown(where);
    } else if (section == "period") {
      if (key == "period_ms") m.period.period_ms = parse_double(where, value);
      else if (key == "interval_count") m.period.interval_count = static_cast<int>(parse_int(where, value));
      else if (key == "interval_ms") m.period.interval_ms = parse_double(where, value);
      else fail_unknown(where);
    } else if (section == "phy") {
      if (key == "carrier_hz") m.phy.carrier_hz = parse_double(where, value);
      else if (key == "tx_power_dbm") m.phy.tx_power_dbm = parse_double(where, value);
      else if (key == "data_rate_mbps") m.phy.data_rate_mbps = parse_double(where, value);
      else if (key == "packet_bytes") m.phy.packet_bytes = static_cast<int>(parse_int(where, value));
      else if (key == "packets_per_interval") m.phy.packets_per_interval = static_cast<int>(parse_int(where, value));
      else if (key == "noise_bandwidth_hz") m.phy.noise_bandwidth_hz = parse_double(where, value);
      else if (key == "noise_figure_db") m.phy.noise_figure_db = parse_double(where, value);
      else if (key == "sinr_threshold_db") m.phy.sinr_threshold_db = parse_double(where, value);
      else if (key == "rx_beamwidth_deg") m.phy.rx_beamwidth_deg = parse_double(where, value);
      else fail_unknown(where);
    } else if (section == "antenna") {
      if (key == "base_sector_count") m.antenna.base_sector_count = static_cast<int>(parse_int(where, value));
      else if (key == "boresight_reference_deg") m.antenna.boresight_reference_deg = parse_double(where, value);
      else if (key == "gain_offset_db") m.antenna.gain_offset_db = parse_double(where, value);
      else fail_unknown(where);
    } else if (section == "ladder") {
      if (key == "entries") m.ladder_entries = parse_double_list(where, value);
      else fail_unknown(where);
    }
  }

  m.validate();
  return m;
}

RunManifest parse_manifest_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_manifest(buffer.str());
}

std::string serialize_manifest(const RunManifest& m) {
  std::ostringstream out;
  out << "[run]\n";
  out << "periods = " << m.periods << "\n";
  out << "replications = " << m.replications << "\n";
  out << "parallel = " << m.parallel << "\n";
  out << "seed = " << m.master_seed << "\n";
  out << "out = " << m.out_dir << "\n";
  out << "policy = " << m.policy << "\n";
  out << "control_range_m = " << format_double(m.control_range_m) << "\n";
  out << "\n[scenario]\n";
  out << "density = " << format_list(m.densities) << "\n";
  out << "tx_ratio = " << format_list(m.tx_ratios) << "\n";
  out << "lanes = " << m.scenario.lanes << "\n";
  out << "lane_width_m = " << format_double(m.scenario.lane_width_m) << "\n";
  out << "road_length_m = " << format_double(m.scenario.road_length_m) << "\n";
  out << "neighbor_range_m = " << format_double(m.scenario.neighbor_range_m) << "\n";
  out << "min_gap_m = " << format_double(m.scenario.min_gap_m) << "\n";
  out << "vehicle_length_m = " << format_double(m.scenario.footprint.length_m) << "\n";
  out << "vehicle_width_m = " << format_double(m.scenario.footprint.width_m) << "\n";
  out << "mobility = "
      << (m.scenario.mobility == Mobility::kIndependentDrops ? "iid_drops"
                                                             : "constant_speed")
      << "\n";
  if (!m.scenario.lane_speeds_mps.empty()) {
    out << "lane_speeds_mps = " << format_list(m.scenario.lane_speeds_mps) << "\n";
  }
  out << "\n[period]\n";
  out << "period_ms = " << format_double(m.period.period_ms) << "\n";
  out << "interval_count = " << m.period.interval_count << "\n";
  out << "interval_ms = " << format_double(m.period.interval_ms) << "\n";
  out << "\n[phy]\n";
  out << "carrier_hz = " << format_double(m.phy.carrier_hz) << "\n";
  out << "tx_power_dbm = " << format_double(m.phy.tx_power_dbm) << "\n";
  out << "data_rate_mbps = " << format_double(m.phy.data_rate_mbps) << "\n";
  out << "packet_bytes = " << m.phy.packet_bytes << "\n";
  out << "packets_per_interval = " << m.phy.packets_per_interval << "\n";
  out << "noise_bandwidth_hz = " << format_double(m.phy.noise_bandwidth_hz) << "\n";
  out << "noise_figure_db = " << format_double(m.phy.noise_figure_db) << "\n";
  out << "sinr_threshold_db = " << format_double(m.phy.sinr_threshold_db) << "\n";
  out << "rx_beamwidth_deg = " << format_double(m.phy.rx_beamwidth_deg) << "\n";
  out << "\n[antenna]\n";
  out << "base_sector_count = " << m.antenna.base_sector_count << "\n";
  out << "boresight_reference_deg = " << format_double(m.antenna.boresight_reference_deg)
      << "\n";
  out << "gain_offset_db = " << format_double(m.antenna.gain_offset_db) << "\n";
  if (!m.ladder_entries.empty()) {
    out << "\n[ladder]\n";
    out << "entries = " << format_list(m.ladder_entries) << "\n";
  }
  return out.str();
}

std::vector<RunSpec> expand_runs(const RunManifest& m) {
  std::vector<Policy> policies;
  if (m.policy == "adaptive") policies = {Policy::kAdaptive};
  else if (m.policy == "baseline") policies = {Policy::kBaseline};
  else policies = {Policy::kAdaptive, Policy::kBaseline};

  std::vector<RunSpec> runs;
  int cell_index = 0;
  for (double density : m.densities) {
    for (double ratio : m.tx_ratios) {
      char cell[64];
      std::snprintf(cell, sizeof(cell), "%g_%g", density, ratio * 100.0);
      for (Policy policy : policies) {
        RunSpec spec;
        spec.density = density;
        spec.tx_ratio = ratio;
        spec.policy = policy;
        spec.cell_dir = cell;
        spec.config.scenario = m.scenario;
        spec.config.scenario.density_veh_per_km = density;
        spec.config.scenario.tx_ratio = ratio;
        spec.config.scenario.cam_period_ms = m.period.period_ms;
        spec.config.period = m.period;
        spec.config.phy = m.phy;
        spec.config.ladder = m.ladder_entries.empty()
                                 ? BeamwidthLadder()
                                 : BeamwidthLadder(m.ladder_entries,
                                                   360.0 / m.antenna.base_sector_count);
        spec.config.antenna_model = m.antenna;
        spec.config.policy = policy;
        spec.config.periods = m.periods;
        spec.config.control_range_m = m.control_range_m;
        // Both policies of a cell share the seed: paired comparisons.
        spec.config.master_seed =
            derive_seed(m.master_seed, static_cast<std::uint64_t>(cell_index));
        runs.push_back(std::move(spec));
      }
      ++cell_index;
    }
  }
  return runs;
}

}  // namespace beamsim
