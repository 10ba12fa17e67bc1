#include "bss/geojson.hpp"

#include <algorithm>

#include <nlohmann/json.hpp>

#include "bss/csv.hpp"

namespace bss {

using nlohmann::json;

namespace {

json point_geometry(const GeoPoint& p) {
  return json{{"type", "Point"}, {"coordinates", {p.lon, p.lat}}};
}

json feature(json geometry, json properties) {
  return json{{"type", "Feature"},
              {"geometry", std::move(geometry)},
              {"properties", std::move(properties)}};
}

json collection(json features) {
  return json{{"type", "FeatureCollection"}, {"features", std::move(features)}};
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace

std::string classification_geojson(std::span<const StationClass> classes,
                                   const StationCatalog& catalog) {
  std::vector<const StationClass*> ordered;
  ordered.reserve(classes.size());
  for (const auto& c : classes) ordered.push_back(&c);
  std::sort(ordered.begin(), ordered.end(),
            [](const StationClass* a, const StationClass* b) {
              return a->station_id < b->station_id;
            });
  json features = json::array();
  for (const StationClass* c : ordered) {
    const Station* station = catalog.find(c->station_id);
    if (!station) throw DataError("classified station '" + c->station_id + "' not in catalog");
    features.push_back(feature(point_geometry(station->location),
                               json{{"id", c->station_id},
                                    {"class", to_string(c->kind)},
                                    {"zero_flow", c->zero_flow}}));
  }
  return dump(collection(std::move(features)));
}

std::map<StationId, StationKind> parse_classification_geojson(const std::string& path) {
  const std::string text = read_file(path);
  json doc = json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object() || doc.value("type", "") != "FeatureCollection" ||
      !doc.contains("features") || !doc["features"].is_array()) {
    throw DataError(path + ": not a GeoJSON FeatureCollection");
  }
  std::map<StationId, StationKind> out;
  for (const auto& f : doc["features"]) {
    if (!f.is_object() || !f.contains("properties") || !f["properties"].is_object()) {
      throw DataError(path + ": classification feature without properties");
    }
    const auto& props = f["properties"];
    if (!props.contains("id") || !props["id"].is_string() || !props.contains("class") ||
        !props["class"].is_string()) {
      throw DataError(path + ": classification feature needs string 'id' and 'class'");
    }
    const StationId id = props["id"].get<std::string>();
    if (!out.emplace(id, station_kind_from_string(props["class"].get<std::string>())).second) {
      throw DataError(path + ": duplicate classification for station '" + id + "'");
    }
  }
  return out;
}

std::string placement_geojson(const Placement& placement,
                              std::span<const CandidateLocation> candidates) {
  std::map<CandidateId, const CandidateLocation*> by_id;
  for (const auto& c : candidates) by_id[c.id] = &c;
  json features = json::array();
  for (const auto& [id, tier] : placement.assignment) {
    auto it = by_id.find(id);
    if (it == by_id.end()) throw DataError("placed candidate '" + id + "' not in candidate set");
    features.push_back(feature(point_geometry(it->second->location),
                               json{{"id", id},
                                    {"tier", to_string(tier)},
                                    {"value", it->second->base_value}}));
  }
  return dump(collection(std::move(features)));
}

std::string placement_summary_json(const Placement& placement, const PlacementModel& model) {
  int small = 0, medium = 0, large = 0;
  for (const auto& [id, tier] : placement.assignment) {
    switch (tier) {
      case Tier::Small: ++small; break;
      case Tier::Medium: ++medium; break;
      case Tier::Large: ++large; break;
    }
  }
  json doc{{"objective", placement.objective},
           {"feasible_empty", placement.feasible_empty},
           {"counts",
            {{"small", small},
             {"medium", medium},
             {"large", large},
             {"total", small + medium + large}}},
           {"params",
            {{"n_max", model.n_max},
             {"m_max", model.m_max},
             {"l_max", model.l_max},
             {"dm_m", model.dm_m},
             {"dl_m", model.dl_m},
             {"alpha", model.alpha},
             {"beta", model.beta},
             {"gamma", model.gamma},
             {"metric", to_string(model.metric)},
             {"isolation_constraint", model.isolation_constraint}}}};
  return dump(doc);
}

std::string features_geojson(std::span<const FeatureSite> features_in) {
  json features = json::array();
  for (const auto& f : features_in) {
    features.push_back(feature(point_geometry(f.location),
                               json{{"kind", to_string(f.kind)},
                                    {"value", f.value},
                                    {"radius_m", f.influence_radius_m}}));
  }
  return dump(collection(std::move(features)));
}

std::string tracts_geojson(std::span<const Tract> tracts) {
  json features = json::array();
  for (const auto& t : tracts) {
    features.push_back(feature(point_geometry(t.centroid),
                               json{{"id", t.id}, {"demand", t.demand}}));
  }
  return dump(collection(std::move(features)));
}

namespace {

json zone_station_listing(const ZoneResult& z) {
  std::map<StationId, int> transfer_of;
  for (const auto& stop : z.plan.stops) transfer_of[stop.station_id] = stop.transfer;
  json stations = json::array();
  for (const auto& s : z.instance.stations) {  // kept sorted by id
    const auto it = transfer_of.find(s.station_id);
    stations.push_back(json{{"station_id", s.station_id},
                            {"bikes", s.bikes},
                            {"capacity", s.capacity},
                            {"class", to_string(s.kind)},
                            {"target", s.target},
                            {"transfer", it == transfer_of.end() ? 0 : it->second}});
  }
  return stations;
}

}  // namespace

std::string rebalance_plan_json(std::span<const ZoneResult> zones) {
  json zone_docs = json::array();
  double total_distance = 0.0;
  long long total_met = 0;
  for (const auto& z : zones) {
    json stops = json::array();
    for (const auto& stop : z.plan.stops) {
      stops.push_back(json{{"station_id", stop.station_id},
                           {"transfer", stop.transfer},
                           {"load_after", stop.load_after}});
    }
    json unmet = json::object();
    for (const auto& [id, residual] : z.plan.unmet) unmet[id] = residual;
    zone_docs.push_back(json{{"zone", z.zone},
                             {"start_load", z.plan.start_load},
                             {"final_load", z.plan.final_load},
                             {"met_demand", z.plan.met_demand},
                             {"total_distance_m", z.plan.total_distance_m},
                             {"stops", std::move(stops)},
                             {"stations", zone_station_listing(z)},
                             {"unmet", std::move(unmet)}});
    total_distance += z.plan.total_distance_m;
    total_met += z.plan.met_demand;
  }
  json doc{{"met_demand", total_met},
           {"total_distance_m", total_distance},
           {"zones", std::move(zone_docs)}};
  return dump(doc);
}

std::string rebalance_route_geojson(std::span<const ZoneResult> zones) {
  json features = json::array();
  for (const auto& z : zones) {
    std::map<StationId, const StationState*> by_id;
    for (const auto& s : z.instance.stations) by_id[s.station_id] = &s;

    json line = json::array();
    if (z.instance.depot) line.push_back({z.instance.depot->lon, z.instance.depot->lat});
    for (const auto& stop : z.plan.stops) {
      const GeoPoint& p = by_id.at(stop.station_id)->location;
      line.push_back({p.lon, p.lat});
    }
    if (line.size() >= 2) {
      features.push_back(feature(json{{"type", "LineString"}, {"coordinates", std::move(line)}},
                                 json{{"zone", z.zone},
                                      {"total_distance_m", z.plan.total_distance_m}}));
    }

    std::map<StationId, std::pair<int, const TruckStop*>> visit_of;
    for (std::size_t k = 0; k < z.plan.stops.size(); ++k) {
      visit_of[z.plan.stops[k].station_id] = {static_cast<int>(k), &z.plan.stops[k]};
    }
    for (const auto& s : z.instance.stations) {
      json props{{"station_id", s.station_id},
                 {"zone", z.zone},
                 {"class", to_string(s.kind)},
                 {"transfer", 0}};
      const auto it = visit_of.find(s.station_id);
      if (it != visit_of.end()) {
        props["transfer"] = it->second.second->transfer;
        props["load_after"] = it->second.second->load_after;
        props["seq"] = it->second.first;
      }
      features.push_back(feature(point_geometry(s.location), std::move(props)));
    }
  }
  return dump(collection(std::move(features)));
}

}  // namespace bss
