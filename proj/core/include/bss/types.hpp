#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "bss/geo.hpp"

namespace bss {

using StationId = std::string;
using TractId = std::string;
using CandidateId = std::string;

/// Seconds since the Unix epoch, UTC.
using Timestamp = std::int64_t;

struct TripRecord {
  std::string trip_id;
  Timestamp started_at = 0;
  Timestamp ended_at = 0;  // >= started_at
  StationId start_station_id;
  StationId end_station_id;

  friend bool operator==(const TripRecord&, const TripRecord&) = default;
};

struct Station {
  StationId id;
  std::string name;
  GeoPoint location;
  int capacity = 1;  // dock count, >= 1
  TractId tract_id;

  friend bool operator==(const Station&, const Station&) = default;
};

struct CandidateLocation {
  CandidateId id;
  GeoPoint location;
  double base_value = 0.0;  // >= 0, filled by the demand stage

  friend bool operator==(const CandidateLocation&, const CandidateLocation&) = default;
};

enum class FeatureKind {
  DemandTract,
  BikeLane,
  ProtectedBikeLane,
  BikeTrail,
  SharedLane,
  MetroStation,
  Attraction,
};

FeatureKind feature_kind_from_string(const std::string& s);
std::string to_string(FeatureKind kind);

struct FeatureSite {
  FeatureKind kind = FeatureKind::Attraction;
  GeoPoint location;
  double value = 0.0;             // >= 0
  double influence_radius_m = 0;  // > 0

  friend bool operator==(const FeatureSite&, const FeatureSite&) = default;
};

struct Tract {
  TractId id;
  GeoPoint centroid;
  double demand = 0.0;  // D_j, >= 0

  friend bool operator==(const Tract&, const Tract&) = default;
};

/// Origin (supply) stations are kept full; Destination (demand) stations
/// are kept at half capacity.
enum class StationKind { Origin, Destination };

std::string to_string(StationKind kind);
StationKind station_kind_from_string(const std::string& s);

/// A live station as the rebalancing truck sees it.
struct StationState {
  StationId station_id;
  GeoPoint location;
  int bikes = 0;     // b, in [0, capacity]
  int capacity = 1;  // c, >= 1
  StationKind kind = StationKind::Destination;
  int target = 0;    // o, in [0, capacity]

  friend bool operator==(const StationState&, const StationState&) = default;
};

// Error taxonomy: IoError and DataError are fatal input problems (exit
// code 2 at the CLI); ConfigError is a usage problem (exit code 1);
// SizeLimitError redirects an exact-solver call to the heuristic.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SizeLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bss
