#include "bss/ingest.hpp"

#include <charconv>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "bss/csv.hpp"
#include "bss/geo.hpp"
#include "bss/log.hpp"
#include "bss/timeutil.hpp"

namespace bss {

namespace {

bool parse_double(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

bool parse_int(const std::string& s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

StationCatalog::StationCatalog(std::vector<Station> stations)
    : stations_(std::move(stations)) {
  for (std::size_t i = 0; i < stations_.size(); ++i) {
    auto [it, inserted] = index_.emplace(stations_[i].id, i);
    if (!inserted) {
      throw DataError("duplicate station id '" + stations_[i].id + "'");
    }
  }
}

const Station* StationCatalog::find(const StationId& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &stations_[it->second];
}

ParsedTrips parse_trips(const std::string& path, const StationCatalog& catalog) {
  CsvTable table = read_csv_file(path);
  ParsedTrips out;

  const int c_id = table.column("ride_id");
  const int c_start = table.column("started_at");
  const int c_end = table.column("ended_at");
  const int c_from = table.column("start_station_id");
  const int c_to = table.column("end_station_id");
  if (c_id < 0 || c_start < 0 || c_end < 0 || c_from < 0 || c_to < 0) {
    throw DataError(path +
                    ": trip CSV must have columns ride_id, started_at, ended_at, "
                    "start_station_id, end_station_id");
  }
  const std::size_t need = static_cast<std::size_t>(
      std::max({c_id, c_start, c_end, c_from, c_to})) + 1;

  std::unordered_set<StationId> seen;
  for (const auto& row : table.rows) {
    if (row.size() < need) {
      out.report.reject("missing field");
      continue;
    }
    auto started = parse_timestamp(row[c_start]);
    auto ended = parse_timestamp(row[c_end]);
    if (!started || !ended) {
      out.report.reject("bad timestamp");
      continue;
    }
    if (*ended < *started) {
      out.report.reject("ends before start");
      continue;
    }
    const StationId& from = row[c_from];
    const StationId& to = row[c_to];
    if (from.empty() || to.empty() || !catalog.contains(from) || !catalog.contains(to)) {
      out.report.reject("unknown station");
      continue;
    }
    seen.insert(from);
    seen.insert(to);
    out.trips.push_back(TripRecord{row[c_id], *started, *ended, from, to});
    ++out.report.accepted;
  }
  out.report.distinct_stations = seen.size();
  return out;
}

ParsedStations parse_stations(const std::string& path) {
  CsvTable table = read_csv_file(path);
  ParsedStations out;

  const int c_id = table.column("id");
  const int c_name = table.column("name");
  const int c_lat = table.column("lat");
  const int c_lon = table.column("lon");
  const int c_cap = table.column("capacity");
  const int c_tract = table.column("tract_id");
  if (c_id < 0 || c_lat < 0 || c_lon < 0 || c_cap < 0) {
    throw DataError(path + ": station CSV must have columns id, lat, lon, capacity");
  }

  std::vector<Station> stations;
  for (const auto& row : table.rows) {
    const std::size_t need = static_cast<std::size_t>(
        std::max({c_id, c_name, c_lat, c_lon, c_cap, c_tract})) + 1;
    if (row.size() < need) {
      out.report.reject("missing field");
      continue;
    }
    Station s;
    s.id = row[c_id];
    if (s.id.empty()) {
      out.report.reject("empty id");
      continue;
    }
    if (c_name >= 0) s.name = row[c_name];
    if (!parse_double(row[c_lat], s.location.lat) ||
        !parse_double(row[c_lon], s.location.lon) || !is_valid(s.location)) {
      out.report.reject("bad coordinates");
      continue;
    }
    if (!parse_int(row[c_cap], s.capacity) || s.capacity < 1) {
      out.report.reject("bad capacity");
      continue;
    }
    if (c_tract >= 0) s.tract_id = row[c_tract];
    stations.push_back(std::move(s));
    ++out.report.accepted;
  }
  out.catalog = StationCatalog(std::move(stations));  // throws on duplicate id
  return out;
}

ParsedCandidates parse_candidates(const std::string& path) {
  CsvTable table = read_csv_file(path);
  ParsedCandidates out;

  const int c_id = table.column("id");
  const int c_lat = table.column("lat");
  const int c_lon = table.column("lon");
  if (c_id < 0 || c_lat < 0 || c_lon < 0) {
    throw DataError(path + ": candidate CSV must have columns id, lat, lon");
  }
  const std::size_t need = static_cast<std::size_t>(std::max({c_id, c_lat, c_lon})) + 1;

  std::unordered_set<CandidateId> seen;
  for (const auto& row : table.rows) {
    if (row.size() < need) {
      out.report.reject("missing field");
      continue;
    }
    CandidateLocation c;
    c.id = row[c_id];
    if (c.id.empty()) {
      out.report.reject("empty id");
      continue;
    }
    if (!seen.insert(c.id).second) {
      throw DataError("duplicate candidate id '" + c.id + "'");
    }
    if (!parse_double(row[c_lat], c.location.lat) ||
        !parse_double(row[c_lon], c.location.lon) || !is_valid(c.location)) {
      out.report.reject("bad coordinates");
      continue;
    }
    out.candidates.push_back(std::move(c));
    ++out.report.accepted;
  }
  return out;
}

namespace {

// Pulls a Point feature's coordinates; false when the geometry is not a
// usable point.
bool point_coords(const nlohmann::json& feature, GeoPoint& p) {
  if (!feature.contains("geometry")) return false;
  const auto& g = feature["geometry"];
  if (!g.is_object() || g.value("type", "") != "Point") return false;
  if (!g.contains("coordinates") || !g["coordinates"].is_array() ||
      g["coordinates"].size() < 2) {
    return false;
  }
  const auto& c = g["coordinates"];
  if (!c[0].is_number() || !c[1].is_number()) return false;
  p.lon = c[0].get<double>();
  p.lat = c[1].get<double>();
  return is_valid(p);
}

nlohmann::json parse_feature_collection(const std::string& path) {
  nlohmann::json doc = nlohmann::json::parse(read_file(path), nullptr, false);
  if (doc.is_discarded() || !doc.is_object() ||
      doc.value("type", "") != "FeatureCollection" || !doc.contains("features") ||
      !doc["features"].is_array()) {
    throw DataError(path + ": not a GeoJSON FeatureCollection");
  }
  return doc;
}

}  // namespace

ParsedFeatures parse_features(const std::string& path) {
  nlohmann::json doc = parse_feature_collection(path);
  ParsedFeatures out;
  for (const auto& f : doc["features"]) {
    FeatureSite site;
    if (!point_coords(f, site.location)) {
      out.report.reject("bad geometry");
      continue;
    }
    const auto props = f.value("properties", nlohmann::json::object());
    if (!props.is_object() || !props.contains("kind") || !props["kind"].is_string()) {
      out.report.reject("missing kind");
      continue;
    }
    try {
      site.kind = feature_kind_from_string(props["kind"].get<std::string>());
    } catch (const DataError&) {
      out.report.reject("unknown kind");
      continue;
    }
    if (!props.contains("value") || !props["value"].is_number() ||
        props["value"].get<double>() < 0.0) {
      out.report.reject("bad value");
      continue;
    }
    if (!props.contains("radius_m") || !props["radius_m"].is_number() ||
        props["radius_m"].get<double>() <= 0.0) {
      out.report.reject("bad radius");
      continue;
    }
    site.value = props["value"].get<double>();
    site.influence_radius_m = props["radius_m"].get<double>();
    out.features.push_back(site);
    ++out.report.accepted;
  }
  return out;
}

ParsedTracts parse_tracts(const std::string& path) {
  nlohmann::json doc = parse_feature_collection(path);
  ParsedTracts out;
  std::unordered_set<TractId> seen;
  for (const auto& f : doc["features"]) {
    Tract t;
    if (!point_coords(f, t.centroid)) {
      out.report.reject("bad geometry");
      continue;
    }
    const auto props = f.value("properties", nlohmann::json::object());
    if (!props.is_object() || !props.contains("id") || !props["id"].is_string() ||
        props["id"].get<std::string>().empty()) {
      out.report.reject("missing id");
      continue;
    }
    t.id = props["id"].get<std::string>();
    if (!seen.insert(t.id).second) {
      throw DataError("duplicate tract id '" + t.id + "'");
    }
    if (props.contains("demand") && props["demand"].is_number()) {
      t.demand = std::max(0.0, props["demand"].get<double>());
    }
    out.tracts.push_back(std::move(t));
    ++out.report.accepted;
  }
  return out;
}

std::string trips_to_csv(const std::vector<TripRecord>& trips) {
  std::string out = "ride_id,started_at,ended_at,start_station_id,end_station_id\n";
  for (const auto& t : trips) {
    out += csv_field(t.trip_id);
    out += ',';
    out += format_timestamp(t.started_at);
    out += ',';
    out += format_timestamp(t.ended_at);
    out += ',';
    out += csv_field(t.start_station_id);
    out += ',';
    out += csv_field(t.end_station_id);
    out += '\n';
  }
  return out;
}

std::string stations_to_csv(const StationCatalog& catalog) {
  std::string out = "id,name,lat,lon,capacity,tract_id\n";
  for (const auto& s : catalog.stations()) {
    out += csv_field(s.id);
    out += ',';
    out += csv_field(s.name);
    out += ',';
    out += format_double(s.location.lat);
    out += ',';
    out += format_double(s.location.lon);
    out += ',';
    out += std::to_string(s.capacity);
    out += ',';
    out += csv_field(s.tract_id);
    out += '\n';
  }
  return out;
}

std::string candidates_to_csv(const std::vector<CandidateLocation>& candidates) {
  std::string out = "id,lat,lon\n";
  for (const auto& c : candidates) {
    out += csv_field(c.id);
    out += ',';
    out += format_double(c.location.lat);
    out += ',';
    out += format_double(c.location.lon);
    out += '\n';
  }
  return out;
}

void write_trips_csv(const std::string& path, const std::vector<TripRecord>& trips) {
  write_file(path, trips_to_csv(trips));
}

void write_stations_csv(const std::string& path, const StationCatalog& catalog) {
  write_file(path, stations_to_csv(catalog));
}

void write_candidates_csv(const std::string& path,
                          const std::vector<CandidateLocation>& candidates) {
  write_file(path, candidates_to_csv(candidates));
}

int nearest_tract(const GeoPoint& p, const std::vector<Tract>& tracts) {
  int best = -1;
  double best_d = 0.0;
  for (std::size_t i = 0; i < tracts.size(); ++i) {
    const double d = great_circle_m(p, tracts[i].centroid);
    if (best < 0 || d < best_d) {
      best = static_cast<int>(i);
      best_d = d;
    }
  }
  return best;
}

}  // namespace bss
