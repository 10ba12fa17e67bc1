#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bss/ingest.hpp"
#include "bss/types.hpp"

namespace bss {

/// Half-open hour-of-day window [begin_hour, end_hour).
struct TimeWindow {
  int begin_hour = 0;
  int end_hour = 24;

  bool contains(int hour) const { return hour >= begin_hour && hour < end_hour; }
  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

// Classification windows paired with the three daily truck passes:
// morning feeds the 11:00 pass, evening the 19:00 pass, and the 03:00
// pass uses the trailing full day.
inline constexpr TimeWindow kMorningWindow{6, 11};
inline constexpr TimeWindow kEveningWindow{15, 19};
inline constexpr TimeWindow kFullDayWindow{0, 24};

/// Hour-binned departures and arrivals for one station.
struct StationFlow {
  StationId station_id;
  std::array<std::int64_t, 24> departures_by_hour{};
  std::array<std::int64_t, 24> arrivals_by_hour{};
  int days_observed = 1;

  std::int64_t departures_in(const TimeWindow& w) const;
  std::int64_t arrivals_in(const TimeWindow& w) const;
};

struct StationClass {
  StationId station_id;
  StationKind kind = StationKind::Destination;
  TimeWindow window;
  bool zero_flow = false;  // no trips touched the station in the window
};

struct HourlyProfile {
  std::array<double, 24> avg_departures{};
  std::array<double, 24> avg_arrivals{};
};

/// Per-station flows keyed by id. days_observed is the number of
/// distinct start dates in the trip set (at least 1).
std::map<StationId, StationFlow> station_flows(std::span<const TripRecord> trips);

/// Tract demand D_j: pick-ups plus drop-offs at the tract's stations,
/// summed over all observed days. Every tract appears in the result.
/// Stations with an unknown tract id fall back to the nearest centroid.
std::map<TractId, double> tract_demand(std::span<const TripRecord> trips,
                                       const StationCatalog& stations,
                                       const std::vector<Tract>& tracts);

/// Copies demand values onto the matching tracts (missing ids keep 0).
std::vector<Tract> apply_demand(std::vector<Tract> tracts,
                                const std::map<TractId, double>& demand);

/// 24-bin per-hour averages: totals divided by days observed.
HourlyProfile hourly_profile(std::span<const TripRecord> trips);

/// Every cataloged station classified: Origin when departures exceed
/// arrivals in the window, Destination otherwise (ties and zero-flow
/// stations are Destinations; zero-flow ones are flagged).
std::vector<StationClass> classify_stations(const StationCatalog& catalog,
                                            const std::map<StationId, StationFlow>& flows,
                                            const TimeWindow& window);

/// Fills candidate base values: the sum of v_f over features whose
/// influence radius covers the candidate, plus the candidate's tract
/// demand min-max normalized across tracts and scaled by w_demand.
std::vector<CandidateLocation> candidate_values(std::vector<CandidateLocation> candidates,
                                                const std::vector<FeatureSite>& features,
                                                const std::vector<Tract>& tracts,
                                                double w_demand);

}  // namespace bss
