#include "bss/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <limits>
#include <map>

#include "bss/csv.hpp"

namespace bss {

RunConfig::RunConfig()
    : depot_lat(std::numeric_limits<double>::quiet_NaN()),
      depot_lon(std::numeric_limits<double>::quiet_NaN()) {}

TimeWindow RunConfig::classification_window() const {
  if (window == "morning") return kMorningWindow;
  if (window == "evening") return kEveningWindow;
  return kFullDayWindow;
}

Metric RunConfig::metric_value() const { return metric_from_string(metric); }

Rounding RunConfig::rounding_value() const {
  return dest_rounding == "floor" ? Rounding::Floor : Rounding::Ceil;
}

bool RunConfig::has_depot() const { return !std::isnan(depot_lat) && !std::isnan(depot_lon); }

PlacementModel RunConfig::placement_model() const {
  PlacementModel model;
  model.n_max = n_max;
  model.m_max = m_max;
  model.l_max = l_max;
  model.dm_m = dm_m;
  model.dl_m = dl_m;
  model.alpha = alpha;
  model.beta = beta;
  model.gamma = gamma;
  model.metric = metric_value();
  model.isolation_constraint = isolation_constraint;
  return model;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const std::string& expected) {
  throw ConfigError("config key '" + key + "' got '" + value + "', expected " + expected);
}

int to_int(const std::string& key, const std::string& value) {
  int out = 0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, value, "an integer");
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, value, "a non-negative integer");
  return out;
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  auto res = std::from_chars(value.data(), end, out);
  if (res.ec != std::errc() || res.ptr != end) bad_value(key, value, "a number");
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "on" || value == "true" || value == "1") return true;
  if (value == "off" || value == "false" || value == "0") return false;
  bad_value(key, value, "on/off");
}

std::string to_choice(const std::string& key, const std::string& value,
                      std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (value == a) return value;
  }
  std::string expected = "one of";
  for (const char* a : allowed) {
    expected += ' ';
    expected += a;
  }
  bad_value(key, value, expected);
}

std::vector<int> to_int_list(const std::string& key, const std::string& value) {
  std::vector<int> out;
  std::size_t pos = 0;
  while (pos <= value.size()) {
    std::size_t comma = value.find(',', pos);
    if (comma == std::string::npos) comma = value.size();
    const std::string item = trim(value.substr(pos, comma - pos));
    if (item.empty()) bad_value(key, value, "comma-separated integers");
    out.push_back(to_int(key, item));
    pos = comma + 1;
  }
  return out;
}

using Setter = std::function<void(RunConfig&, const std::string& key, const std::string& value)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = {
      {"trips", [](RunConfig& c, const std::string&, const std::string& v) { c.trips_path = v; }},
      {"stations",
       [](RunConfig& c, const std::string&, const std::string& v) { c.stations_path = v; }},
      {"candidates",
       [](RunConfig& c, const std::string&, const std::string& v) { c.candidates_path = v; }},
      {"features",
       [](RunConfig& c, const std::string&, const std::string& v) { c.features_path = v; }},
      {"tracts", [](RunConfig& c, const std::string&, const std::string& v) { c.tracts_path = v; }},
      {"demand", [](RunConfig& c, const std::string&, const std::string& v) { c.demand_path = v; }},
      {"station_state",
       [](RunConfig& c, const std::string&, const std::string& v) { c.station_state_path = v; }},
      {"classes",
       [](RunConfig& c, const std::string&, const std::string& v) { c.classes_path = v; }},
      {"out", [](RunConfig& c, const std::string&, const std::string& v) { c.out_dir = v; }},
      {"seed",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.seed = to_u64(k, v); }},
      {"w_demand",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.w_demand = to_double(k, v);
       }},
      {"window",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.window = to_choice(k, v, {"morning", "evening", "full_day"});
       }},
      {"n_max",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.n_max = to_int(k, v); }},
      {"m_max",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.m_max = to_int(k, v); }},
      {"l_max",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.l_max = to_int(k, v); }},
      {"dm_m",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.dm_m = to_double(k, v); }},
      {"dl_m",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.dl_m = to_double(k, v); }},
      {"alpha",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.alpha = to_double(k, v); }},
      {"beta",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.beta = to_double(k, v); }},
      {"gamma",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.gamma = to_double(k, v); }},
      {"metric",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.metric = to_choice(k, v, {"great_circle", "manhattan"});
       }},
      {"isolation_constraint",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.isolation_constraint = to_bool(k, v);
       }},
      {"place_exact_limit",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.place_exact_limit = to_int(k, v);
       }},
      {"place_solver",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.place_solver = to_choice(k, v, {"auto", "exact", "heuristic"});
       }},
      {"sweep_n",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.sweep_n = to_int_list(k, v);
       }},
      {"truck_capacity",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.truck_capacity = to_int(k, v);
       }},
      {"truck_start_load",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.truck_start_load = to_int(k, v);
       }},
      {"depot_lat",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.depot_lat = to_double(k, v);
       }},
      {"depot_lon",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.depot_lon = to_double(k, v);
       }},
      {"zones",
       [](RunConfig& c, const std::string& k, const std::string& v) { c.zones = to_int(k, v); }},
      {"rebalance_exact_limit",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.rebalance_exact_limit = to_int(k, v);
       }},
      {"rebalance_solver",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.rebalance_solver = to_choice(k, v, {"auto", "exact", "heuristic"});
       }},
      {"dest_rounding",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.dest_rounding = to_choice(k, v, {"ceil", "floor"});
       }},
      {"synth_stations",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.synth_stations = to_int(k, v);
       }},
      {"synth_candidates",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.synth_candidates = to_int(k, v);
       }},
      {"synth_features",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.synth_features = to_int(k, v);
       }},
      {"synth_tracts",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.synth_tracts = to_int(k, v);
       }},
      {"synth_trips",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.synth_trips = to_int(k, v);
       }},
      {"synth_days",
       [](RunConfig& c, const std::string& k, const std::string& v) {
         c.synth_days = to_int(k, v);
       }},
      {"synth_start_date",
       [](RunConfig& c, const std::string&, const std::string& v) { c.synth_start_date = v; }},
  };
  return table;
}

}  // namespace

std::vector<std::string> config_keys() {
  std::vector<std::string> keys;
  for (const auto& [key, setter] : setters()) keys.push_back(key);
  return keys;
}

void set_config_key(RunConfig& config, const std::string& key, const std::string& value) {
  const auto& table = setters();
  const auto it = table.find(key);
  if (it == table.end()) {
    std::string msg = "unknown config key '" + key + "'; valid keys are:";
    for (const auto& k : config_keys()) {
      msg += ' ';
      msg += k;
    }
    throw ConfigError(msg);
  }
  it->second(config, key, value);
}

void apply_override(RunConfig& config, const std::string& key_equals_value) {
  const std::size_t eq = key_equals_value.find('=');
  if (eq == std::string::npos) {
    throw ConfigError("override '" + key_equals_value + "' is not of the form key=value");
  }
  const std::string key = trim(key_equals_value.substr(0, eq));
  const std::string value = trim(key_equals_value.substr(eq + 1));
  if (key.empty()) {
    throw ConfigError("override '" + key_equals_value + "' has an empty key");
  }
  set_config_key(config, key, value);
}

RunConfig parse_config_file(const std::string& path) {
  const std::string text = read_file(path);
  RunConfig config;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    const std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(line_no) +
                        ": expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
    }
    set_config_key(config, key, value);
  }
  return config;
}

}  // namespace bss
