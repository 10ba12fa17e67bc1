#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bss/demand.hpp"
#include "bss/geo.hpp"
#include "bss/placement.hpp"
#include "bss/rebalance.hpp"

namespace bss {

/// Run settings shared by every subcommand: input paths plus the
/// module parameters, loaded from a `key = value` file and overridden
/// by command-line flags. Unknown keys are usage errors that list the
/// accepted keys.
struct RunConfig {
  // Input paths (empty = not provided).
  std::string trips_path;
  std::string stations_path;
  std::string candidates_path;
  std::string features_path;
  std::string tracts_path;
  std::string demand_path;  // demand CSV to overlay on the tracts
  std::string station_state_path;
  std::string classes_path;

  std::string out_dir = "out";
  std::uint64_t seed = 0;

  // Demand.
  double w_demand = 10.0;
  std::string window = "full_day";  // morning | evening | full_day

  // Placement.
  int n_max = 10;
  int m_max = 50;
  int l_max = 50;
  double dm_m = 300.0;
  double dl_m = 1500.0;
  double alpha = 1.0;
  double beta = 1.5;
  double gamma = 2.0;
  std::string metric = "great_circle";  // great_circle | manhattan
  bool isolation_constraint = true;
  int place_exact_limit = kDefaultPlacementExactLimit;
  std::string place_solver = "auto";  // auto | exact | heuristic
  std::vector<int> sweep_n = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50, 55, 60};

  // Rebalancing.
  int truck_capacity = 20;
  int truck_start_load = 0;
  double depot_lat;  // NaN when unset
  double depot_lon;  // NaN when unset
  int zones = 1;
  int rebalance_exact_limit = kDefaultRebalanceExactLimit;
  std::string rebalance_solver = "auto";  // auto | exact | heuristic
  std::string dest_rounding = "ceil";     // ceil | floor

  // Synthetic fixture generation.
  int synth_stations = 22;
  int synth_candidates = 200;
  int synth_features = 30;
  int synth_tracts = 12;
  int synth_trips = 5000;
  int synth_days = 7;
  std::string synth_start_date = "2021-06-01";

  RunConfig();

  TimeWindow classification_window() const;
  Metric metric_value() const;
  Rounding rounding_value() const;
  bool has_depot() const;

  /// The placement model parameters (candidates filled by the caller).
  PlacementModel placement_model() const;
};

/// Applies one `key = value` setting. Throws ConfigError on an unknown
/// key (message lists the valid ones) or an unparsable value.
void set_config_key(RunConfig& config, const std::string& key, const std::string& value);

/// Applies an override of the form "key=value" (whitespace tolerated).
void apply_override(RunConfig& config, const std::string& key_equals_value);

/// Loads a config file: one `key = value` per line, '#' lines and blank
/// lines ignored. Throws IoError when unreadable, ConfigError on bad
/// content.
RunConfig parse_config_file(const std::string& path);

/// All accepted keys, sorted (for error messages and docs).
std::vector<std::string> config_keys();

}  // namespace bss
