#include "bss/demand.hpp"

#include <algorithm>
#include <set>

#include "bss/geo.hpp"
#include "bss/log.hpp"
#include "bss/timeutil.hpp"

namespace bss {

std::int64_t StationFlow::departures_in(const TimeWindow& w) const {
  std::int64_t total = 0;
  for (int h = w.begin_hour; h < w.end_hour; ++h) total += departures_by_hour[h];
  return total;
}

std::int64_t StationFlow::arrivals_in(const TimeWindow& w) const {
  std::int64_t total = 0;
  for (int h = w.begin_hour; h < w.end_hour; ++h) total += arrivals_by_hour[h];
  return total;
}

namespace {

int distinct_start_days(std::span<const TripRecord> trips) {
  std::set<std::int64_t> days;
  for (const auto& t : trips) days.insert(day_index(t.started_at));
  return std::max<int>(1, static_cast<int>(days.size()));
}

}  // namespace

std::map<StationId, StationFlow> station_flows(std::span<const TripRecord> trips) {
  std::map<StationId, StationFlow> flows;
  const int days = distinct_start_days(trips);
  for (const auto& t : trips) {
    auto& dep = flows[t.start_station_id];
    if (dep.station_id.empty()) dep.station_id = t.start_station_id;
    ++dep.departures_by_hour[hour_of_day(t.started_at)];
    auto& arr = flows[t.end_station_id];
    if (arr.station_id.empty()) arr.station_id = t.end_station_id;
    ++arr.arrivals_by_hour[hour_of_day(t.ended_at)];
  }
  for (auto& [id, flow] : flows) flow.days_observed = days;
  return flows;
}

std::map<TractId, double> tract_demand(std::span<const TripRecord> trips,
                                       const StationCatalog& stations,
                                       const std::vector<Tract>& tracts) {
  std::map<TractId, double> demand;
  for (const auto& t : tracts) demand[t.id] = 0.0;
  if (tracts.empty()) return demand;

  std::set<TractId> known;
  for (const auto& t : tracts) known.insert(t.id);

  // station id -> tract id, with nearest-centroid fallback
  std::map<StationId, TractId> tract_of;
  for (const auto& s : stations.stations()) {
    if (!s.tract_id.empty() && known.count(s.tract_id) > 0) {
      tract_of[s.id] = s.tract_id;
    } else {
      const int idx = nearest_tract(s.location, tracts);
      tract_of[s.id] = tracts[static_cast<std::size_t>(idx)].id;
    }
  }

  for (const auto& t : trips) {
    auto from = tract_of.find(t.start_station_id);
    if (from != tract_of.end()) demand[from->second] += 1.0;  // pick-up
    auto to = tract_of.find(t.end_station_id);
    if (to != tract_of.end()) demand[to->second] += 1.0;  // drop-off
  }
  return demand;
}

std::vector<Tract> apply_demand(std::vector<Tract> tracts,
                                const std::map<TractId, double>& demand) {
  for (auto& t : tracts) {
    auto it = demand.find(t.id);
    t.demand = it == demand.end() ? 0.0 : it->second;
  }
  return tracts;
}

HourlyProfile hourly_profile(std::span<const TripRecord> trips) {
  HourlyProfile profile;
  if (trips.empty()) return profile;
  const double days = distinct_start_days(trips);
  for (const auto& t : trips) {
    profile.avg_departures[hour_of_day(t.started_at)] += 1.0;
    profile.avg_arrivals[hour_of_day(t.ended_at)] += 1.0;
  }
  for (int h = 0; h < 24; ++h) {
    profile.avg_departures[h] /= days;
    profile.avg_arrivals[h] /= days;
  }
  return profile;
}

std::vector<StationClass> classify_stations(const StationCatalog& catalog,
                                            const std::map<StationId, StationFlow>& flows,
                                            const TimeWindow& window) {
  std::vector<StationClass> classes;
  classes.reserve(catalog.size());
  for (const auto& s : catalog.stations()) {
    StationClass c;
    c.station_id = s.id;
    c.window = window;
    auto it = flows.find(s.id);
    const std::int64_t dep = it == flows.end() ? 0 : it->second.departures_in(window);
    const std::int64_t arr = it == flows.end() ? 0 : it->second.arrivals_in(window);
    c.kind = dep > arr ? StationKind::Origin : StationKind::Destination;
    c.zero_flow = dep == 0 && arr == 0;
    if (c.zero_flow) {
      log_debug("station " + s.id + " has no flow in window; classified destination");
    }
    classes.push_back(std::move(c));
  }
  return classes;
}

std::vector<CandidateLocation> candidate_values(std::vector<CandidateLocation> candidates,
                                                const std::vector<FeatureSite>& features,
                                                const std::vector<Tract>& tracts,
                                                double w_demand) {
  double lo = 0.0, hi = 0.0;
  if (!tracts.empty()) {
    lo = hi = tracts.front().demand;
    for (const auto& t : tracts) {
      lo = std::min(lo, t.demand);
      hi = std::max(hi, t.demand);
    }
  }
  const double span = hi - lo;

  for (auto& c : candidates) {
    double value = 0.0;
    for (const auto& f : features) {
      if (great_circle_m(c.location, f.location) <= f.influence_radius_m) {
        value += f.value;
      }
    }
    if (!tracts.empty() && span > 0.0) {
      const int idx = nearest_tract(c.location, tracts);
      const double norm = (tracts[static_cast<std::size_t>(idx)].demand - lo) / span;
      value += norm * w_demand;
    }
    c.base_value = value;
  }
  return candidates;
}

}  // namespace bss
