#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "bss/types.hpp"

namespace bss {

/// Row-level accounting for a parse run. Malformed rows are counted and
/// categorized, never fatal; fatal problems (missing file, duplicate
/// station id) throw instead.
struct IngestReport {
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::map<std::string, std::size_t> reject_reasons;
  std::size_t distinct_stations = 0;  // trips only

  void reject(const std::string& reason) {
    ++rejected;
    ++reject_reasons[reason];
  }
};

/// Stations in file order with an id lookup. Immutable after parsing.
class StationCatalog {
 public:
  StationCatalog() = default;
  explicit StationCatalog(std::vector<Station> stations);

  const std::vector<Station>& stations() const { return stations_; }
  const Station* find(const StationId& id) const;
  bool contains(const StationId& id) const { return find(id) != nullptr; }
  std::size_t size() const { return stations_.size(); }
  bool empty() const { return stations_.empty(); }

  friend bool operator==(const StationCatalog& a, const StationCatalog& b) {
    return a.stations_ == b.stations_;
  }

 private:
  std::vector<Station> stations_;
  std::unordered_map<StationId, std::size_t> index_;
};

struct ParsedTrips {
  std::vector<TripRecord> trips;
  IngestReport report;
};

struct ParsedStations {
  StationCatalog catalog;
  IngestReport report;
};

struct ParsedCandidates {
  std::vector<CandidateLocation> candidates;
  IngestReport report;
};

struct ParsedFeatures {
  std::vector<FeatureSite> features;
  IngestReport report;
};

struct ParsedTracts {
  std::vector<Tract> tracts;
  IngestReport report;
};

/// Trip CSV follows the public Capital Bikeshare export column names
/// (ride_id, started_at, ended_at, start_station_id, end_station_id);
/// extra columns are ignored. Rows with bad timestamps, missing fields,
/// or station ids not in the catalog are rejected with a reason.
ParsedTrips parse_trips(const std::string& path, const StationCatalog& catalog);

/// Station CSV columns: id, name, lat, lon, capacity, tract_id.
/// A duplicate id is fatal and names the id.
ParsedStations parse_stations(const std::string& path);

/// Candidate CSV columns: id, lat, lon.
ParsedCandidates parse_candidates(const std::string& path);

/// GeoJSON FeatureCollection of Points with properties
/// {kind: string, value: number, radius_m: number}.
ParsedFeatures parse_features(const std::string& path);

/// GeoJSON FeatureCollection of Points with properties
/// {id: string, demand?: number}.
ParsedTracts parse_tracts(const std::string& path);

// Writers. Doubles are emitted in shortest round-trip form so that
// write-then-parse restores equal values.
std::string trips_to_csv(const std::vector<TripRecord>& trips);
std::string stations_to_csv(const StationCatalog& catalog);
std::string candidates_to_csv(const std::vector<CandidateLocation>& candidates);

void write_trips_csv(const std::string& path, const std::vector<TripRecord>& trips);
void write_stations_csv(const std::string& path, const StationCatalog& catalog);
void write_candidates_csv(const std::string& path,
                          const std::vector<CandidateLocation>& candidates);

/// Station a trip endpoint belongs to when the catalog row has no usable
/// tract: the tract whose centroid is nearest (great-circle). Returns -1
/// when tracts is empty.
int nearest_tract(const GeoPoint& p, const std::vector<Tract>& tracts);

}  // namespace bss
