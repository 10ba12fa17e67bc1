// bss_opt: one binary, six subcommands covering the pipeline from raw
// trip/station data to siting and truck-rebalancing outputs. All
// diagnostics go to stderr (BSS_OPT_LOG); stdout carries short result
// summaries and data files land in the output directory.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include "bss/config.hpp"
#include "bss/csv.hpp"
#include "bss/demand.hpp"
#include "bss/geojson.hpp"
#include "bss/ingest.hpp"
#include "bss/log.hpp"
#include "bss/placement.hpp"
#include "bss/rebalance.hpp"
#include "bss/synth.hpp"
#include "bss/timeutil.hpp"
#include "bss/types.hpp"

namespace fs = std::filesystem;
using namespace bss;

namespace {

const std::string& require_path(const std::string& path, const char* key) {
  if (path.empty()) {
    throw ConfigError(std::string("missing required config key '") + key +
                      "' (set it in the config file or via --set)");
  }
  return path;
}

void check_exists(const std::string& path) {
  if (!fs::exists(path)) throw IoError("input file does not exist: " + path);
}

std::string out_file(const RunConfig& config, const char* name) {
  fs::create_directories(config.out_dir);
  return (fs::path(config.out_dir) / name).string();
}

void note_written(const std::string& path) { std::printf("wrote %s\n", path.c_str()); }

void print_report(const char* label, const IngestReport& report) {
  std::printf("%s: %zu accepted, %zu rejected\n", label, report.accepted, report.rejected);
  for (const auto& [reason, count] : report.reject_reasons) {
    std::printf("  %s: %zu\n", reason.c_str(), count);
  }
}

// ---------------------------------------------------------------- ingest

void cmd_ingest(const RunConfig& config) {
  check_exists(require_path(config.stations_path, "stations"));
  check_exists(require_path(config.trips_path, "trips"));

  const ParsedStations stations = parse_stations(config.stations_path);
  print_report("stations", stations.report);
  const ParsedTrips trips = parse_trips(config.trips_path, stations.catalog);
  print_report("trips", trips.report);
  std::printf("  distinct stations used: %zu\n", trips.report.distinct_stations);

  if (!config.candidates_path.empty()) {
    check_exists(config.candidates_path);
    print_report("candidates", parse_candidates(config.candidates_path).report);
  }
  if (!config.features_path.empty()) {
    check_exists(config.features_path);
    print_report("features", parse_features(config.features_path).report);
  }
  if (!config.tracts_path.empty()) {
    check_exists(config.tracts_path);
    print_report("tracts", parse_tracts(config.tracts_path).report);
  }
}

// ---------------------------------------------------------------- demand

void cmd_demand(const RunConfig& config) {
  check_exists(require_path(config.stations_path, "stations"));
  check_exists(require_path(config.trips_path, "trips"));
  check_exists(require_path(config.tracts_path, "tracts"));

  const StationCatalog catalog = parse_stations(config.stations_path).catalog;
  const std::vector<TripRecord> trips = parse_trips(config.trips_path, catalog).trips;
  const std::vector<Tract> tracts = parse_tracts(config.tracts_path).tracts;

  const std::map<TractId, double> demand = tract_demand(trips, catalog, tracts);
  std::string demand_csv = "tract_id,demand\n";
  for (const auto& [tract_id, d] : demand) {
    demand_csv += csv_field(tract_id);
    demand_csv += ',';
    demand_csv += format_double(d);
    demand_csv += '\n';
  }
  const std::string demand_path = out_file(config, "demand.csv");
  write_file(demand_path, demand_csv);
  note_written(demand_path);

  const HourlyProfile profile = hourly_profile(trips);
  std::string hourly_csv = "hour,avg_departures,avg_arrivals\n";
  for (int h = 0; h < 24; ++h) {
    hourly_csv += std::to_string(h);
    hourly_csv += ',';
    hourly_csv += format_double(profile.avg_departures[static_cast<std::size_t>(h)]);
    hourly_csv += ',';
    hourly_csv += format_double(profile.avg_arrivals[static_cast<std::size_t>(h)]);
    hourly_csv += '\n';
  }
  const std::string hourly_path = out_file(config, "hourly.csv");
  write_file(hourly_path, hourly_csv);
  note_written(hourly_path);

  const std::map<StationId, StationFlow> flows = station_flows(trips);
  const std::vector<StationClass> classes =
      classify_stations(catalog, flows, config.classification_window());
  int origins = 0, zero_flow = 0;
  for (const auto& c : classes) {
    if (c.kind == StationKind::Origin) ++origins;
    if (c.zero_flow) ++zero_flow;
  }
  const std::string classes_path = out_file(config, "classification.geojson");
  write_file(classes_path, classification_geojson(classes, catalog));
  note_written(classes_path);
  std::printf("classified %zu stations: %d origin, %zu destination (%d zero-flow)\n",
              classes.size(), origins, classes.size() - static_cast<std::size_t>(origins),
              zero_flow);
}

// ----------------------------------------------------------------- place

std::vector<CandidateLocation> load_valued_candidates(const RunConfig& config) {
  check_exists(require_path(config.candidates_path, "candidates"));
  std::vector<CandidateLocation> candidates =
      parse_candidates(config.candidates_path).candidates;

  std::vector<FeatureSite> features;
  if (!config.features_path.empty()) {
    check_exists(config.features_path);
    features = parse_features(config.features_path).features;
  }
  std::vector<Tract> tracts;
  if (!config.tracts_path.empty()) {
    check_exists(config.tracts_path);
    tracts = parse_tracts(config.tracts_path).tracts;
  }
  if (!config.demand_path.empty()) {
    if (tracts.empty()) {
      throw ConfigError("config key 'demand' needs 'tracts' to apply the demand to");
    }
    check_exists(config.demand_path);
    const CsvTable table = read_csv_file(config.demand_path);
    const int c_id = table.column("tract_id");
    const int c_demand = table.column("demand");
    if (c_id < 0 || c_demand < 0) {
      throw DataError(config.demand_path + " needs columns tract_id, demand");
    }
    std::map<TractId, double> overlay;
    for (const auto& row : table.rows) {
      double value = 0.0;
      const std::string& cell = row[static_cast<std::size_t>(c_demand)];
      const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), value);
      if (res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
        throw DataError(config.demand_path + ": bad demand value '" + cell + "'");
      }
      overlay[row[static_cast<std::size_t>(c_id)]] = value;
    }
    tracts = apply_demand(std::move(tracts), overlay);
  }
  return candidate_values(std::move(candidates), features, tracts, config.w_demand);
}

Placement run_placement(const PlacementModel& model, const RunConfig& config) {
  const std::size_t n = model.candidates.size();
  if (config.place_solver == "exact") {
    return solve_exact(model, config.place_exact_limit);
  }
  if (config.place_solver == "heuristic") {
    return solve_heuristic(model, config.seed);
  }
  if (static_cast<int>(n) <= config.place_exact_limit) {
    log_info("placement: " + std::to_string(n) + " candidates, using the exact solver");
    return solve_exact(model, config.place_exact_limit);
  }
  log_info("placement: " + std::to_string(n) + " candidates, using the heuristic solver");
  return solve_heuristic(model, config.seed);
}

void cmd_place(const RunConfig& config) {
  PlacementModel model = config.placement_model();
  model.candidates = load_valued_candidates(config);
  const Placement placement = run_placement(model, config);

  const std::string geo_path = out_file(config, "placement.geojson");
  write_file(geo_path, placement_geojson(placement, model.candidates));
  note_written(geo_path);
  const std::string summary_path = out_file(config, "placement_summary.json");
  write_file(summary_path, placement_summary_json(placement, model));
  note_written(summary_path);
  std::printf("placed %zu stations, objective %s\n", placement.assignment.size(),
              format_double(placement.objective).c_str());
}

// ----------------------------------------------------------------- sweep

void cmd_sweep(const RunConfig& config) {
  PlacementModel model = config.placement_model();
  model.candidates = load_valued_candidates(config);
  const std::vector<std::pair<int, double>> curve = sweep_n(model, config.sweep_n, config.seed);

  std::string csv = "n,objective\n";
  for (const auto& [n, objective] : curve) {
    csv += std::to_string(n);
    csv += ',';
    csv += format_double(objective);
    csv += '\n';
  }
  const std::string path = out_file(config, "sweep.csv");
  write_file(path, csv);
  note_written(path);
  std::printf("swept %zu budget values\n", curve.size());
}

// ------------------------------------------------------------- rebalance

void cmd_rebalance(const RunConfig& config) {
  check_exists(require_path(config.station_state_path, "station_state"));
  check_exists(require_path(config.classes_path, "classes"));

  std::vector<StationState> states = parse_station_states(config.station_state_path).states;
  const std::map<StationId, StationKind> kinds =
      parse_classification_geojson(config.classes_path);
  for (auto& s : states) {
    const auto it = kinds.find(s.station_id);
    if (it == kinds.end()) {
      throw DataError("station '" + s.station_id + "' has no classification");
    }
    s.kind = it->second;
  }
  set_targets(states, config.rounding_value());

  std::optional<GeoPoint> depot;
  if (std::isnan(config.depot_lat) != std::isnan(config.depot_lon)) {
    throw ConfigError("set both depot_lat and depot_lon, or neither");
  }
  if (config.has_depot()) {
    depot = GeoPoint{config.depot_lat, config.depot_lon};
    check_valid(*depot, "depot");
  }

  const std::vector<std::vector<std::size_t>> zones =
      zone_partition(states, config.zones, config.seed);
  std::vector<ZoneResult> results;
  for (std::size_t z = 0; z < zones.size(); ++z) {
    std::vector<StationState> members;
    for (std::size_t i : zones[z]) members.push_back(states[i]);
    ZoneResult result;
    result.zone = static_cast<int>(z);
    result.instance = make_instance(std::move(members), config.truck_capacity,
                                    config.truck_start_load, depot);
    int active = 0;
    for (const auto& s : result.instance.stations) {
      if (s.bikes != s.target) ++active;
    }
    const std::string zone_tag = "zone " + std::to_string(z) + ": " + std::to_string(active) +
                                 " active stations, ";
    if (config.rebalance_solver == "exact" ||
        (config.rebalance_solver == "auto" && active <= config.rebalance_exact_limit)) {
      log_info(zone_tag + "exact route search");
      result.plan = solve_route_exact(result.instance, config.rebalance_exact_limit);
    } else {
      log_info(zone_tag + "heuristic route search");
      result.plan = solve_route_heuristic(result.instance, config.seed);
    }
    results.push_back(std::move(result));
  }

  const std::string plan_path = out_file(config, "plan.json");
  write_file(plan_path, rebalance_plan_json(results));
  note_written(plan_path);
  const std::string route_path = out_file(config, "route.geojson");
  write_file(route_path, rebalance_route_geojson(results));
  note_written(route_path);

  long long met = 0;
  double dist = 0.0;
  std::size_t stops = 0, shortfalls = 0;
  for (const auto& r : results) {
    met += r.plan.met_demand;
    dist += r.plan.total_distance_m;
    stops += r.plan.stops.size();
    shortfalls += r.plan.unmet.size();
  }
  std::printf("%zu zones, %zu stops, met demand %lld, %zu stations off target, distance %s m\n",
              results.size(), stops, met, shortfalls, format_double(dist).c_str());
}

// ----------------------------------------------------------------- synth

void parse_start_date(const std::string& date, SynthConfig& synth) {
  if (!parse_timestamp(date + " 00:00:00")) {
    throw ConfigError("synth_start_date '" + date + "' is not a valid YYYY-MM-DD date");
  }
  synth.start_year = std::stoi(date.substr(0, 4));
  synth.start_month = std::stoi(date.substr(5, 2));
  synth.start_day = std::stoi(date.substr(8, 2));
}

void cmd_synth(const RunConfig& config) {
  SynthConfig synth;
  synth.stations = config.synth_stations;
  synth.candidates = config.synth_candidates;
  synth.features = config.synth_features;
  synth.tracts = config.synth_tracts;
  synth.trips = config.synth_trips;
  synth.days = config.synth_days;
  parse_start_date(config.synth_start_date, synth);

  const SynthData data = generate_synthetic(synth, config.seed);

  const std::string stations_path = out_file(config, "stations.csv");
  write_stations_csv(stations_path, data.stations);
  note_written(stations_path);
  const std::string trips_path = out_file(config, "trips.csv");
  write_trips_csv(trips_path, data.trips);
  note_written(trips_path);
  const std::string candidates_path = out_file(config, "candidates.csv");
  write_candidates_csv(candidates_path, data.candidates);
  note_written(candidates_path);
  const std::string features_path = out_file(config, "features.geojson");
  write_file(features_path, features_geojson(data.features));
  note_written(features_path);
  const std::string tracts_path = out_file(config, "tracts.geojson");
  write_file(tracts_path, tracts_geojson(data.tracts));
  note_written(tracts_path);
  const std::string states_path = out_file(config, "station_states.csv");
  write_station_states(states_path, data.station_states);
  note_written(states_path);

  nlohmann::json truth{{"origin_heavy", data.origin_heavy}};
  const std::string truth_path = out_file(config, "ground_truth.json");
  write_file(truth_path, truth.dump(2) + "\n");
  note_written(truth_path);

  std::printf("synthesized %zu stations, %zu candidates, %zu trips over %d days\n",
              data.stations.size(), data.candidates.size(), data.trips.size(), synth.days);
}

// ------------------------------------------------------------------ main

struct CommonFlags {
  std::string config_path;
  std::vector<std::string> sets;
  std::uint64_t seed = 0;
  std::string out_dir;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* out_opt = nullptr;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Config file of key = value lines");
  cmd->add_option("--set", flags.sets, "Override one config key (key=value, repeatable)");
  flags.seed_opt = cmd->add_option("--seed", flags.seed, "Random seed (default 0)");
  flags.out_opt = cmd->add_option("--out", flags.out_dir, "Output directory");
}

RunConfig resolve(const CommonFlags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) {
    check_exists(flags.config_path);
    config = parse_config_file(flags.config_path);
  }
  for (const auto& s : flags.sets) apply_override(config, s);
  if (flags.seed_opt->count() > 0) config.seed = flags.seed;
  if (flags.out_opt->count() > 0) config.out_dir = flags.out_dir;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bike-share station siting and truck rebalancing toolkit"};
  app.require_subcommand(1);

  struct Dispatch {
    CLI::App* cmd;
    CommonFlags flags;
    void (*run)(const RunConfig&);
  };
  std::vector<Dispatch> table;
  table.push_back({app.add_subcommand("ingest", "Validate inputs and print row counts"),
                   {}, cmd_ingest});
  table.push_back({app.add_subcommand("demand", "Tract demand, hourly profile, classification"),
                   {}, cmd_demand});
  table.push_back({app.add_subcommand("place", "Choose station sites and tiers"),
                   {}, cmd_place});
  table.push_back({app.add_subcommand("sweep", "Objective vs station budget curve"),
                   {}, cmd_sweep});
  table.push_back({app.add_subcommand("rebalance", "Plan truck routes to restore targets"),
                   {}, cmd_rebalance});
  table.push_back({app.add_subcommand("synth", "Generate a synthetic fixture set"),
                   {}, cmd_synth});
  for (auto& entry : table) add_common(entry.cmd, entry.flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Normalize CLI11's exit codes: 0 for --help/--version, 1 for usage.
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    for (auto& entry : table) {
      if (entry.cmd->parsed()) entry.run(resolve(entry.flags));
    }
    return 0;
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
