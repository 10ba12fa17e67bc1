#pragma once

#include <stdexcept>
#include <string>

namespace bss {

/// WGS-84 coordinate in decimal degrees.
struct GeoPoint {
  double lat = 0.0;  // [-90, 90]
  double lon = 0.0;  // [-180, 180]

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;
};

bool is_valid(const GeoPoint& p);

/// Throws std::invalid_argument when p is outside the WGS-84 ranges.
void check_valid(const GeoPoint& p, const std::string& what);

/// Great-circle distance in meters (haversine, sphere radius 6,371,000 m).
/// Symmetric, non-negative, zero iff the points coincide.
double great_circle_m(const GeoPoint& a, const GeoPoint& b);

/// Manhattan (L1) distance in meters on a local equirectangular plane:
/// east = dlon * cos(mean lat) * 111,320; north = dlat * 111,320.
/// At city scale this stays within ~0.1% of a true projected L1 distance
/// and is always >= the great-circle distance (up to projection error).
double manhattan_m(const GeoPoint& a, const GeoPoint& b);

/// Which metric a model uses for pairwise spacing.
enum class Metric { GreatCircle, Manhattan };

double distance_m(Metric metric, const GeoPoint& a, const GeoPoint& b);

Metric metric_from_string(const std::string& name);  // "great_circle" | "manhattan"
std::string to_string(Metric metric);

/// Equirectangular projection of p about a fixed reference latitude,
/// in meters east/north of (ref_lat, ref_lon). Used for clustering.
struct PlanarPoint {
  double east_m = 0.0;
  double north_m = 0.0;
};

PlanarPoint project_local(const GeoPoint& p, double ref_lat_deg, double ref_lon_deg);

}  // namespace bss
