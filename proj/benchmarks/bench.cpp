// Microbenchmarks for the hot paths: distance kernels, the candidate
// neighbor index, both placement solvers, and both route solvers.
#include <benchmark/benchmark.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <vector>

#include "bss/geo.hpp"
#include "bss/placement.hpp"
#include "bss/rand.hpp"
#include "bss/rebalance.hpp"

namespace {

using namespace bss;

GeoPoint random_point(Rng& rng, double span_deg) {
  return {38.80 + rng.uniform01() * span_deg, -77.12 + rng.uniform01() * span_deg * 1.2};
}

PlacementModel make_model(int n_candidates, int n_max, double span_deg) {
  Rng rng(42);
  PlacementModel model;
  model.n_max = n_max;
  model.m_max = std::max(1, n_max / 4);
  model.l_max = std::max(1, n_max / 4);
  for (int i = 0; i < n_candidates; ++i) {
    CandidateLocation c;
    char id[16];
    std::snprintf(id, sizeof(id), "c%05d", i);
    c.id = id;
    c.location = random_point(rng, span_deg);
    c.base_value = rng.uniform(0.0, 100.0);
    model.candidates.push_back(std::move(c));
  }
  return model;
}

RebalanceInstance make_zone(int n_stations) {
  Rng rng(42);
  std::vector<StationState> states;
  for (int i = 0; i < n_stations; ++i) {
    StationState s;
    char id[16];
    std::snprintf(id, sizeof(id), "s%04d", i);
    s.station_id = id;
    s.location = random_point(rng, 0.02);
    s.capacity = static_cast<int>(rng.uniform_int(10, 30));
    s.kind = rng.uniform01() < 0.5 ? StationKind::Origin : StationKind::Destination;
    states.push_back(std::move(s));
  }
  set_targets(states);
  for (auto& s : states) {
    s.bikes = static_cast<int>(rng.uniform_int(0, s.capacity));
  }
  return make_instance(std::move(states), 20, 10, std::nullopt);
}

void BM_GreatCircleM(benchmark::State& state) {
  Rng rng(1);
  const GeoPoint a = random_point(rng, 0.2);
  const GeoPoint b = random_point(rng, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(great_circle_m(a, b));
  }
}
BENCHMARK(BM_GreatCircleM);

void BM_ManhattanM(benchmark::State& state) {
  Rng rng(1);
  const GeoPoint a = random_point(rng, 0.2);
  const GeoPoint b = random_point(rng, 0.2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(manhattan_m(a, b));
  }
}
BENCHMARK(BM_ManhattanM);

void BM_NeighborIndex(benchmark::State& state) {
  const PlacementModel model = make_model(static_cast<int>(state.range(0)), 10, 0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        build_neighbor_index(model.candidates, model.dm_m, model.dl_m, model.metric));
  }
}
BENCHMARK(BM_NeighborIndex)->Arg(200)->Arg(1000)->Arg(3000);

void BM_PlaceExact(benchmark::State& state) {
  const PlacementModel model = make_model(static_cast<int>(state.range(0)), 4, 0.02);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_exact(model));
  }
}
BENCHMARK(BM_PlaceExact)->Arg(12)->Arg(16)->Arg(20);

void BM_PlaceHeuristic(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const PlacementModel model = make_model(n, std::max(5, n / 8), 0.15);
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_heuristic(model, 7));
  }
}
BENCHMARK(BM_PlaceHeuristic)->Arg(100)->Arg(400)->Arg(1600)->Unit(benchmark::kMillisecond);

void BM_RouteExact(benchmark::State& state) {
  const RebalanceInstance instance = make_zone(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_route_exact(instance, 11));
  }
}
BENCHMARK(BM_RouteExact)->Arg(7)->Arg(9)->Arg(11)->Unit(benchmark::kMillisecond);

void BM_RouteHeuristic(benchmark::State& state) {
  const RebalanceInstance instance = make_zone(static_cast<int>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_route_heuristic(instance, 7));
  }
}
BENCHMARK(BM_RouteHeuristic)->Arg(22)->Arg(60)->Arg(150)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
