#include "bss/geo.hpp"

#include <cmath>

namespace bss {

namespace {
constexpr double kEarthRadiusM = 6'371'000.0;
constexpr double kMetersPerDegree = 111'320.0;
constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
}  // namespace

bool is_valid(const GeoPoint& p) {
  return std::isfinite(p.lat) && std::isfinite(p.lon) &&
         p.lat >= -90.0 && p.lat <= 90.0 &&
         p.lon >= -180.0 && p.lon <= 180.0;
}

void check_valid(const GeoPoint& p, const std::string& what) {
  if (!is_valid(p)) {
    throw std::invalid_argument(what + ": coordinates out of range (lat " +
                                std::to_string(p.lat) + ", lon " +
                                std::to_string(p.lon) + ")");
  }
}

double great_circle_m(const GeoPoint& a, const GeoPoint& b) {
  const double phi1 = a.lat * kDegToRad;
  const double phi2 = b.lat * kDegToRad;
  const double dphi = (b.lat - a.lat) * kDegToRad;
  const double dlam = (b.lon - a.lon) * kDegToRad;
  const double sp = std::sin(dphi / 2.0);
  const double sl = std::sin(dlam / 2.0);
  const double h = sp * sp + std::cos(phi1) * std::cos(phi2) * sl * sl;
  return 2.0 * kEarthRadiusM * std::asin(std::min(1.0, std::sqrt(h)));
}

double manhattan_m(const GeoPoint& a, const GeoPoint& b) {
  const double mean_lat = (a.lat + b.lat) / 2.0;
  const double east = (b.lon - a.lon) * std::cos(mean_lat * kDegToRad) * kMetersPerDegree;
  const double north = (b.lat - a.lat) * kMetersPerDegree;
  return std::fabs(east) + std::fabs(north);
}

double distance_m(Metric metric, const GeoPoint& a, const GeoPoint& b) {
  return metric == Metric::GreatCircle ? great_circle_m(a, b) : manhattan_m(a, b);
}

Metric metric_from_string(const std::string& name) {
  if (name == "great_circle") return Metric::GreatCircle;
  if (name == "manhattan") return Metric::Manhattan;
  throw std::invalid_argument("unknown metric '" + name +
                              "' (expected great_circle or manhattan)");
}

std::string to_string(Metric metric) {
  return metric == Metric::GreatCircle ? "great_circle" : "manhattan";
}

PlanarPoint project_local(const GeoPoint& p, double ref_lat_deg, double ref_lon_deg) {
  PlanarPoint out;
  out.east_m = (p.lon - ref_lon_deg) * std::cos(ref_lat_deg * kDegToRad) * kMetersPerDegree;
  out.north_m = (p.lat - ref_lat_deg) * kMetersPerDegree;
  return out;
}

}  // namespace bss
