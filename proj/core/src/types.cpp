#include "bss/types.hpp"

namespace bss {

FeatureKind feature_kind_from_string(const std::string& s) {
  if (s == "demand_tract") return FeatureKind::DemandTract;
  if (s == "bike_lane") return FeatureKind::BikeLane;
  if (s == "protected_bike_lane") return FeatureKind::ProtectedBikeLane;
  if (s == "bike_trail") return FeatureKind::BikeTrail;
  if (s == "shared_lane") return FeatureKind::SharedLane;
  if (s == "metro_station") return FeatureKind::MetroStation;
  if (s == "attraction") return FeatureKind::Attraction;
  throw DataError("unknown feature kind '" + s + "'");
}

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::DemandTract: return "demand_tract";
    case FeatureKind::BikeLane: return "bike_lane";
    case FeatureKind::ProtectedBikeLane: return "protected_bike_lane";
    case FeatureKind::BikeTrail: return "bike_trail";
    case FeatureKind::SharedLane: return "shared_lane";
    case FeatureKind::MetroStation: return "metro_station";
    case FeatureKind::Attraction: return "attraction";
  }
  return "attraction";
}

std::string to_string(StationKind kind) {
  return kind == StationKind::Origin ? "origin" : "destination";
}

StationKind station_kind_from_string(const std::string& s) {
  if (s == "origin") return StationKind::Origin;
  if (s == "destination") return StationKind::Destination;
  throw DataError("unknown station class '" + s + "' (expected origin or destination)");
}

}  // namespace bss
