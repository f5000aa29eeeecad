#include "mmshare/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <vector>

namespace mmshare {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& value, int line) {
  const std::string v = trim(value);
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) {
    throw ConfigError("line " + std::to_string(line) + ": expected a number, got '" + v + "'");
  }
  return out;
}

long long parse_int(const std::string& value, int line) {
  const double d = parse_double(value, line);
  if (d != std::floor(d)) {
    throw ConfigError("line " + std::to_string(line) + ": expected an integer, got '" +
                      trim(value) + "'");
  }
  return static_cast<long long>(d);
}

std::uint64_t parse_seed(const std::string& value, int line) {
  const std::string v = trim(value);
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw ConfigError("line " + std::to_string(line) + ": expected an unsigned integer, got '" +
                      v + "'");
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& value, int line) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    out.push_back(parse_double(item, line));
  }
  if (out.empty()) {
    throw ConfigError("line " + std::to_string(line) + ": expected a comma-separated list");
  }
  return out;
}

using Setter = std::function<void(AppConfig&, const std::string&, int line)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"area.width_m", [](AppConfig& c, const std::string& v, int l) {
         c.sim.area.width_m = parse_double(v, l); }},
      {"area.height_m", [](AppConfig& c, const std::string& v, int l) {
         c.sim.area.height_m = parse_double(v, l); }},
      {"deployment.bs_density_per_km2", [](AppConfig& c, const std::string& v, int l) {
         c.sim.bs_density_per_km2 = parse_double(v, l); }},
      {"deployment.user_density_per_km2", [](AppConfig& c, const std::string& v, int l) {
         c.sim.user_density_per_km2 = parse_double(v, l); }},
      {"deployment.n1", [](AppConfig& c, const std::string& v, int l) {
         c.sim.n1 = parse_double(v, l); }},
      {"antenna_bs.main_lobe_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.bs_pattern.main_lobe_db = parse_double(v, l); }},
      {"antenna_bs.back_lobe_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.bs_pattern.back_lobe_db = parse_double(v, l); }},
      {"antenna_bs.beamwidth_deg", [](AppConfig& c, const std::string& v, int l) {
         c.sim.bs_pattern.beamwidth_deg = parse_double(v, l); }},
      {"antenna_ue.main_lobe_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.ue_pattern.main_lobe_db = parse_double(v, l); }},
      {"antenna_ue.back_lobe_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.ue_pattern.back_lobe_db = parse_double(v, l); }},
      {"antenna_ue.beamwidth_deg", [](AppConfig& c, const std::string& v, int l) {
         c.sim.ue_pattern.beamwidth_deg = parse_double(v, l); }},
      {"rate.bandwidth_hz", [](AppConfig& c, const std::string& v, int l) {
         c.sim.rate.bandwidth_hz = parse_double(v, l); }},
      {"rate.overhead", [](AppConfig& c, const std::string& v, int l) {
         c.sim.rate.overhead = parse_double(v, l); }},
      {"rate.loss_factor", [](AppConfig& c, const std::string& v, int l) {
         c.sim.rate.loss_factor = parse_double(v, l); }},
      {"rate.tx_power_dbm", [](AppConfig& c, const std::string& v, int l) {
         c.sim.rate.tx_power_dbm = parse_double(v, l); }},
      {"rate.noise_figure_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.rate.noise_figure_db = parse_double(v, l); }},
      {"rate.noise_psd_dbm_hz", [](AppConfig& c, const std::string& v, int l) {
         c.sim.rate.noise_psd_dbm_hz = parse_double(v, l); }},
      {"channel.outage_scale_m", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.outage_scale_m = parse_double(v, l); }},
      {"channel.outage_offset", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.outage_offset = parse_double(v, l); }},
      {"channel.los_scale_m", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.los_scale_m = parse_double(v, l); }},
      {"channel.los_intercept_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.los.intercept_db = parse_double(v, l); }},
      {"channel.los_slope", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.los.slope = parse_double(v, l); }},
      {"channel.los_shadow_sigma_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.los.shadow_sigma_db = parse_double(v, l); }},
      {"channel.nlos_intercept_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.nlos.intercept_db = parse_double(v, l); }},
      {"channel.nlos_slope", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.nlos.slope = parse_double(v, l); }},
      {"channel.nlos_shadow_sigma_db", [](AppConfig& c, const std::string& v, int l) {
         c.sim.channel.nlos.shadow_sigma_db = parse_double(v, l); }},
      {"scheduler.gamma", [](AppConfig& c, const std::string& v, int l) {
         c.sim.gamma = parse_double(v, l); }},
      {"sim.slots_per_drop", [](AppConfig& c, const std::string& v, int l) {
         c.sim.slots_per_drop = static_cast<int>(parse_int(v, l)); }},
      {"sim.num_drops", [](AppConfig& c, const std::string& v, int l) {
         c.sim.num_drops = static_cast<int>(parse_int(v, l)); }},
      {"sim.base_seed", [](AppConfig& c, const std::string& v, int l) {
         c.sim.base_seed = parse_seed(v, l); }},
      {"sim.interference_mode", [](AppConfig& c, const std::string& v, int l) {
         const std::string mode = trim(v);
         if (mode == "full") {
           c.sim.interference_mode = InterferenceMode::Full;
         } else if (mode == "noise_limited") {
           c.sim.interference_mode = InterferenceMode::NoiseLimited;
         } else {
           throw ConfigError("line " + std::to_string(l) +
                             ": sim.interference_mode must be 'full' or 'noise_limited'");
         }
       }},
      {"sim.psi_grid", [](AppConfig& c, const std::string& v, int l) {
         c.sim.psi_grid = parse_double_list(v, l); }},
      {"sim.threads", [](AppConfig& c, const std::string& v, int l) {
         c.sim.threads = static_cast<int>(parse_int(v, l)); }},
      {"market.n1", [](AppConfig& c, const std::string& v, int l) {
         c.market.n1 = parse_double(v, l); }},
      {"market.n2", [](AppConfig& c, const std::string& v, int l) {
         c.market.n2 = parse_double(v, l); }},
      {"market.c1", [](AppConfig& c, const std::string& v, int l) {
         c.market.c1 = parse_double(v, l); }},
      {"market.c2", [](AppConfig& c, const std::string& v, int l) {
         c.market.c2 = parse_double(v, l); }},
      {"market.mu", [](AppConfig& c, const std::string& v, int l) {
         c.market.mu = parse_double(v, l); }},
      {"market.omega_hat", [](AppConfig& c, const std::string& v, int l) {
         c.market.omega_hat = parse_double(v, l); }},
      {"market.psi1", [](AppConfig& c, const std::string& v, int l) {
         c.market.psi1 = parse_double(v, l); }},
      {"market.consumer_mass", [](AppConfig& c, const std::string& v, int l) {
         c.market.consumer_mass = parse_double(v, l); }},
      {"market.undercut_epsilon", [](AppConfig& c, const std::string& v, int l) {
         c.market.undercut_epsilon = parse_double(v, l); }},
  };
  return table;
}

}  // namespace

AppConfig parse_config(const std::string& text) {
  AppConfig config;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw);
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line = trim(line.substr(0, hash));
    }
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": unterminated section header");
      }
      section = trim(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = line.substr(eq + 1);
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key '" + key +
                        "' appears before any [section]");
    }
    const std::string full_key = section + "." + key;
    const auto it = setters().find(full_key);
    if (it == setters().end()) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + full_key + "'");
    }
    it->second(config, value, line_no);
  }
  config.sim.validate();
  config.market.validate();
  return config;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string resolved_text(const AppConfig& c) {
  std::ostringstream out;
  auto kv = [&out](const char* key, const std::string& value) {
    out << key << " = " << value << "\n";
  };
  auto kvd = [&kv](const char* key, double v) { kv(key, format_double(v)); };

  out << "[area]\n";
  kvd("width_m", c.sim.area.width_m);
  kvd("height_m", c.sim.area.height_m);
  out << "\n[deployment]\n";
  kvd("bs_density_per_km2", c.sim.bs_density_per_km2);
  kvd("user_density_per_km2", c.sim.user_density_per_km2);
  kvd("n1", c.sim.n1);
  out << "\n[antenna_bs]\n";
  kvd("main_lobe_db", c.sim.bs_pattern.main_lobe_db);
  kvd("back_lobe_db", c.sim.bs_pattern.back_lobe_db);
  kvd("beamwidth_deg", c.sim.bs_pattern.beamwidth_deg);
  out << "\n[antenna_ue]\n";
  kvd("main_lobe_db", c.sim.ue_pattern.main_lobe_db);
  kvd("back_lobe_db", c.sim.ue_pattern.back_lobe_db);
  kvd("beamwidth_deg", c.sim.ue_pattern.beamwidth_deg);
  out << "\n[rate]\n";
  kvd("bandwidth_hz", c.sim.rate.bandwidth_hz);
  kvd("overhead", c.sim.rate.overhead);
  kvd("loss_factor", c.sim.rate.loss_factor);
  kvd("tx_power_dbm", c.sim.rate.tx_power_dbm);
  kvd("noise_figure_db", c.sim.rate.noise_figure_db);
  kvd("noise_psd_dbm_hz", c.sim.rate.noise_psd_dbm_hz);
  out << "\n[channel]\n";
  kvd("outage_scale_m", c.sim.channel.outage_scale_m);
  kvd("outage_offset", c.sim.channel.outage_offset);
  kvd("los_scale_m", c.sim.channel.los_scale_m);
  kvd("los_intercept_db", c.sim.channel.los.intercept_db);
  kvd("los_slope", c.sim.channel.los.slope);
  kvd("los_shadow_sigma_db", c.sim.channel.los.shadow_sigma_db);
  kvd("nlos_intercept_db", c.sim.channel.nlos.intercept_db);
  kvd("nlos_slope", c.sim.channel.nlos.slope);
  kvd("nlos_shadow_sigma_db", c.sim.channel.nlos.shadow_sigma_db);
  out << "\n[scheduler]\n";
  kvd("gamma", c.sim.gamma);
  out << "\n[sim]\n";
  kv("slots_per_drop", std::to_string(c.sim.slots_per_drop));
  kv("num_drops", std::to_string(c.sim.num_drops));
  kv("base_seed", std::to_string(c.sim.base_seed));
  kv("interference_mode",
     c.sim.interference_mode == InterferenceMode::Full ? "full" : "noise_limited");
  std::string grid;
  for (std::size_t i = 0; i < c.sim.psi_grid.size(); ++i) {
    if (i) grid += ",";
    grid += format_double(c.sim.psi_grid[i]);
  }
  kv("psi_grid", grid);
  kv("threads", std::to_string(c.sim.threads));
  out << "\n[market]\n";
  kvd("n1", c.market.n1);
  kvd("n2", c.market.n2);
  kvd("c1", c.market.c1);
  kvd("c2", c.market.c2);
  kvd("mu", c.market.mu);
  kvd("omega_hat", c.market.omega_hat);
  kvd("psi1", c.market.psi1);
  kvd("consumer_mass", c.market.consumer_mass);
  kvd("undercut_epsilon", c.market.undercut_epsilon);
  return out.str();
}

std::string config_digest(const AppConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a64(resolved_text(config))));
  return std::string(buf);
}

}  // namespace mmshare
