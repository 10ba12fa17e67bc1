#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "bss/demand.hpp"
#include "bss/ingest.hpp"
#include "bss/placement.hpp"
#include "bss/rebalance.hpp"
#include "bss/types.hpp"

namespace bss {

/// Output emitters. Everything here is deterministic: features are
/// ordered by id (or zone, then id), JSON keys are sorted, and doubles
/// print as shortest round-trip decimals.

/// Station classification map: Point per station with properties
/// {id, class: origin|destination, zero_flow}.
std::string classification_geojson(std::span<const StationClass> classes,
                                   const StationCatalog& catalog);

/// Reads a classification file back: station id -> kind.
std::map<StationId, StationKind> parse_classification_geojson(const std::string& path);

/// Chosen stations as Points with properties {id, tier, value}.
std::string placement_geojson(const Placement& placement,
                              std::span<const CandidateLocation> candidates);

/// {objective, counts: {small, medium, large, total}, params: {...}}.
std::string placement_summary_json(const Placement& placement, const PlacementModel& model);

/// Feature sites as Points with properties {kind, value, radius_m};
/// round-trips through parse_features.
std::string features_geojson(std::span<const FeatureSite> features);

/// Tract centroids as Points with properties {id, demand}; round-trips
/// through parse_tracts.
std::string tracts_geojson(std::span<const Tract> tracts);

/// One zone's solved rebalancing problem, paired for emission.
struct ZoneResult {
  int zone = 0;
  RebalanceInstance instance;
  TruckPlan plan;
};

/// Plan JSON: per zone the ordered stops {station_id, transfer,
/// load_after}, the full station listing with zero-transfer
/// annotations for untouched stations, unmet residuals, and distance;
/// totals across zones at the top level.
std::string rebalance_plan_json(std::span<const ZoneResult> zones);

/// Route map: per zone a LineString through the stops (depot first when
/// set) plus a Point per station annotated with its transfer.
std::string rebalance_route_geojson(std::span<const ZoneResult> zones);

}  // namespace bss
