#pragma once

#include <cstdint>
#include <vector>

#include "bss/ingest.hpp"
#include "bss/types.hpp"

namespace bss {

/// Desk-scale stand-in for a real trip export: counts, a bounding box,
/// and how lopsided the origin-heavy stations should be.
struct SynthConfig {
  int stations = 22;
  int candidates = 200;
  int features = 30;
  int tracts = 12;
  int trips = 5000;
  int days = 7;
  int start_year = 2021;
  int start_month = 6;
  int start_day = 1;
  double min_lat = 38.85;
  double max_lat = 38.95;
  double min_lon = -77.12;
  double max_lon = -76.99;
  // Fraction of stations drawn with origin_heavy_ratio departures per
  // arrival; the rest absorb the surplus arrivals.
  double origin_heavy_fraction = 0.3;
  double origin_heavy_ratio = 3.0;
  int peak_hour_am = 8;
  int peak_hour_pm = 17;
  int capacity_min = 8;
  int capacity_max = 24;
};

struct SynthData {
  StationCatalog stations;
  std::vector<CandidateLocation> candidates;
  std::vector<FeatureSite> features;
  std::vector<Tract> tracts;
  std::vector<TripRecord> trips;
  std::vector<StationState> station_states;  // bikes snapshot; class/target unset
  std::vector<StationId> origin_heavy;       // ground truth, sorted by id
};

/// Deterministic for a fixed (config, seed): the same pair always
/// produces identical data. Zero counts give empty collections.
SynthData generate_synthetic(const SynthConfig& config, std::uint64_t seed);

}  // namespace bss
