#include "bss/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "bss/rand.hpp"
#include "bss/timeutil.hpp"

namespace bss {

namespace {

std::string padded_id(char prefix, int n) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%c%04d", prefix, n);
  return buf;
}

GeoPoint random_point(Rng& rng, const SynthConfig& c) {
  return GeoPoint{rng.uniform(c.min_lat, c.max_lat), rng.uniform(c.min_lon, c.max_lon)};
}

}  // namespace

SynthData generate_synthetic(const SynthConfig& config, std::uint64_t seed) {
  if (config.min_lat >= config.max_lat || config.min_lon >= config.max_lon) {
    throw ConfigError("synthetic bounding box is empty");
  }
  Rng rng(seed);
  SynthData out;

  for (int i = 0; i < config.tracts; ++i) {
    out.tracts.push_back(Tract{padded_id('T', i + 1), random_point(rng, config), 0.0});
  }

  std::vector<Station> stations;
  for (int i = 0; i < config.stations; ++i) {
    Station s;
    s.id = padded_id('S', i + 1);
    s.name = "Station " + std::to_string(i + 1);
    s.location = random_point(rng, config);
    s.capacity = static_cast<int>(rng.uniform_int(config.capacity_min, config.capacity_max));
    const int t = nearest_tract(s.location, out.tracts);
    if (t >= 0) s.tract_id = out.tracts[static_cast<std::size_t>(t)].id;
    stations.push_back(std::move(s));
  }
  out.stations = StationCatalog(std::move(stations));

  // Candidates on a jittered grid: the stand-in for street intersections.
  if (config.candidates > 0) {
    const int cols = static_cast<int>(std::ceil(std::sqrt(double(config.candidates))));
    const int rows = (config.candidates + cols - 1) / cols;
    const double dlat = (config.max_lat - config.min_lat) / rows;
    const double dlon = (config.max_lon - config.min_lon) / cols;
    for (int i = 0; i < config.candidates; ++i) {
      const int r = i / cols;
      const int c = i % cols;
      GeoPoint p;
      p.lat = config.min_lat + (r + 0.5 + rng.uniform(-0.2, 0.2)) * dlat;
      p.lon = config.min_lon + (c + 0.5 + rng.uniform(-0.2, 0.2)) * dlon;
      p.lat = std::clamp(p.lat, config.min_lat, config.max_lat);
      p.lon = std::clamp(p.lon, config.min_lon, config.max_lon);
      out.candidates.push_back(CandidateLocation{padded_id('C', i + 1), p, 0.0});
    }
  }

  static const FeatureKind kKinds[] = {
      FeatureKind::DemandTract,   FeatureKind::BikeLane, FeatureKind::ProtectedBikeLane,
      FeatureKind::BikeTrail,     FeatureKind::SharedLane, FeatureKind::MetroStation,
      FeatureKind::Attraction};
  for (int i = 0; i < config.features; ++i) {
    FeatureSite f;
    f.kind = kKinds[rng.uniform_int(0, 6)];
    f.location = random_point(rng, config);
    f.value = rng.uniform(1.0, 10.0);
    f.influence_radius_m = rng.uniform(100.0, 600.0);
    out.features.push_back(f);
  }

  for (const auto& s : out.stations.stations()) {
    StationState st;
    st.station_id = s.id;
    st.location = s.location;
    st.capacity = s.capacity;
    st.bikes = static_cast<int>(rng.uniform_int(0, s.capacity));
    out.station_states.push_back(std::move(st));
  }

  const int n = config.stations;
  if (n > 0 && config.trips > 0) {
    int heavy_count = static_cast<int>(std::lround(config.origin_heavy_fraction * n));
    heavy_count = std::clamp(heavy_count, 0, n);
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    rng.shuffle(order);
    std::vector<bool> heavy(static_cast<std::size_t>(n), false);
    for (int i = 0; i < heavy_count; ++i) heavy[static_cast<std::size_t>(order[i])] = true;
    for (int i = 0; i < n; ++i) {
      if (heavy[static_cast<std::size_t>(i)]) {
        out.origin_heavy.push_back(out.stations.stations()[static_cast<std::size_t>(i)].id);
      }
    }
    std::sort(out.origin_heavy.begin(), out.origin_heavy.end());

    // Start/end weights chosen so an origin-heavy station's expected
    // departures-to-arrivals ratio is exactly origin_heavy_ratio: heavy
    // stations start trips with weight r and end them with weight 1;
    // the others end with weight x = 1 + f(r-1)/(1-f), which equalizes
    // the start and end weight totals.
    const double r = std::max(1.0, config.origin_heavy_ratio);
    const double f = n > heavy_count ? double(heavy_count) / n : 0.0;
    const double x = heavy_count < n ? 1.0 + f * (r - 1.0) / (1.0 - f) : 1.0;
    std::vector<double> start_w(static_cast<std::size_t>(n));
    std::vector<double> end_w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      start_w[static_cast<std::size_t>(i)] = heavy[static_cast<std::size_t>(i)] ? r : 1.0;
      end_w[static_cast<std::size_t>(i)] = heavy[static_cast<std::size_t>(i)] ? 1.0 : x;
    }

    const Timestamp base =
        timestamp_of_date(config.start_year, config.start_month, config.start_day);
    const int days = std::max(1, config.days);
    for (int i = 0; i < config.trips; ++i) {
      const std::int64_t day = rng.uniform_int(0, days - 1);
      const int peak = rng.uniform01() < 0.5 ? config.peak_hour_am : config.peak_hour_pm;
      const int hour =
          std::clamp(static_cast<int>(std::lround(peak + rng.normal() * 2.0)), 0, 23);
      const std::int64_t minute = rng.uniform_int(0, 59);
      const std::int64_t second = rng.uniform_int(0, 59);
      const std::int64_t duration = rng.uniform_int(300, 3600);

      TripRecord t;
      char buf[16];
      std::snprintf(buf, sizeof(buf), "R%06d", i + 1);
      t.trip_id = buf;
      t.started_at = base + day * 86400 + hour * 3600 + minute * 60 + second;
      t.ended_at = t.started_at + duration;
      t.start_station_id =
          out.stations.stations()[rng.weighted_pick(start_w)].id;
      t.end_station_id = out.stations.stations()[rng.weighted_pick(end_w)].id;
      out.trips.push_back(std::move(t));
    }
  }

  return out;
}

}  // namespace bss
