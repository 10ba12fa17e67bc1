#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bss/demand.hpp"
#include "bss/geo.hpp"
#include "bss/ingest.hpp"
#include "bss/types.hpp"

namespace bss {

/// Destination stations are held at half capacity; odd capacities round
/// up by default (favors bike availability) but the floor is available.
enum class Rounding { Ceil, Floor };

/// Origin stations are topped up to full capacity, destination stations
/// to half. Every station must already be classified.
void set_targets(std::vector<StationState>& stations, Rounding rounding = Rounding::Ceil);

/// Feasible pickup (p) and drop (q) ranges for one station: a visit may
/// not move a station away from its target, pickups are capped by the
/// bikes present and drops by the free docks.
struct TransferBounds {
  int p_min = 0;
  int p_max = 0;
  int q_min = 0;
  int q_max = 0;
};

TransferBounds transfer_bounds(const StationState& s);

/// One truck, one zone: stations (kept sorted by id), the truck's
/// capacity B and starting load, an optional depot, and pairwise
/// Manhattan distances in meters.
struct RebalanceInstance {
  std::vector<StationState> stations;
  int truck_capacity = 20;
  int truck_start_load = 0;
  std::optional<GeoPoint> depot;
  std::vector<std::vector<double>> distances;  // symmetric, zero diagonal
  std::vector<double> depot_distances;         // depot -> station, when depot set

  void validate() const;
};

/// Sorts the stations by id and fills in the distance matrices.
RebalanceInstance make_instance(std::vector<StationState> stations, int truck_capacity,
                                int truck_start_load = 0,
                                std::optional<GeoPoint> depot = std::nullopt);

/// One visited station: positive transfer = bikes picked up, negative =
/// bikes dropped off. Stations left untouched never appear as stops.
struct TruckStop {
  StationId station_id;
  int transfer = 0;
  int load_after = 0;
};

/// A feasible route with its transfers. load_trace[k] is the truck load
/// immediately before stop k, so load_trace[k+1] == stops[k].load_after
/// and the recurrence t' = t - q + p holds stop by stop. unmet maps a
/// station id to its residual bikes-minus-target (only nonzero entries;
/// negative = shortfall).
struct TruckPlan {
  std::vector<TruckStop> stops;
  std::vector<int> load_trace;
  int start_load = 0;
  int final_load = 0;
  double total_distance_m = 0.0;
  long long met_demand = 0;  // total |transfer| across stops
  std::map<StationId, int> unmet;
};

inline constexpr int kDefaultRebalanceExactLimit = 11;

/// Optimal plan by exhaustive search over visit orders of the stations
/// that need a transfer: maximizes met demand, then minimizes total
/// Manhattan distance (depot leg included when a depot is set).
/// Transfer quantities along an order are set greedily to the bound
/// extreme: full correction when the load allows, otherwise as much as
/// the truck can carry or spare. Throws SizeLimitError when more than
/// exact_limit stations need a transfer.
TruckPlan solve_route_exact(const RebalanceInstance& instance,
                            int exact_limit = kDefaultRebalanceExactLimit);

/// Nearest-neighbor construction (deficits that cannot be fully served
/// defer to the nearest surplus pickup first), then 2-opt and
/// single-stop relocation under the same lexicographic objective.
/// Deterministic for a fixed seed.
TruckPlan solve_route_heuristic(const RebalanceInstance& instance, std::uint64_t seed);

/// Applies a plan's transfers to the instance's stations, returning the
/// post-route states (bikes adjusted; everything else copied).
std::vector<StationState> apply_plan(const RebalanceInstance& instance, const TruckPlan& plan);

/// Seeded k-means over locally projected coordinates, iteration cap
/// 100. Returns k index sets (into `stations`), each sorted, zones
/// ordered by their smallest member; zones beyond the station count
/// come back empty. k=1 puts every station in one zone.
std::vector<std::vector<std::size_t>> zone_partition(std::span<const StationState> stations,
                                                     int k, std::uint64_t seed);

/// One scheduled truck sweep and the flow window its classification
/// should use.
struct RebalancePass {
  Timestamp at = 0;
  TimeWindow window;
};

/// The three daily sweeps: 11:00 after the morning window, 19:00 after
/// the evening window, and 03:00 the next day on full-day flows.
std::vector<RebalancePass> schedule_passes(int year, int month, int day);

/// Station-state CSV: header id,lat,lon,bikes,capacity. Bad rows are
/// rejected with reasons in the report; duplicate ids are fatal.
struct ParsedStates {
  std::vector<StationState> states;
  IngestReport report;
};

ParsedStates parse_station_states(const std::string& path);
std::string station_states_to_csv(std::span<const StationState> states);
void write_station_states(const std::string& path, std::span<const StationState> states);

}  // namespace bss
