#include "bss/rebalance.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <unordered_set>

#include "bss/csv.hpp"
#include "bss/log.hpp"
#include "bss/rand.hpp"
#include "bss/timeutil.hpp"

namespace bss {

void set_targets(std::vector<StationState>& stations, Rounding rounding) {
  for (auto& s : stations) {
    if (s.kind == StationKind::Origin) {
      s.target = s.capacity;
    } else {
      s.target = rounding == Rounding::Ceil ? (s.capacity + 1) / 2 : s.capacity / 2;
    }
  }
}

TransferBounds transfer_bounds(const StationState& s) {
  TransferBounds tb;
  tb.p_min = std::max(0, s.bikes - s.target);
  tb.p_max = s.bikes;
  tb.q_min = std::max(0, s.target - s.bikes);
  tb.q_max = s.capacity - s.bikes;
  return tb;
}

void RebalanceInstance::validate() const {
  if (truck_capacity < 0) throw std::invalid_argument("truck capacity must be >= 0");
  if (truck_start_load < 0 || truck_start_load > truck_capacity) {
    throw std::invalid_argument("truck start load must lie in [0, truck capacity]");
  }
  const std::size_t n = stations.size();
  std::unordered_set<StationId> ids;
  for (const auto& s : stations) {
    if (s.station_id.empty()) throw std::invalid_argument("station with empty id");
    if (!ids.insert(s.station_id).second) {
      throw std::invalid_argument("duplicate station id '" + s.station_id + "'");
    }
    if (s.capacity < 1 || s.bikes < 0 || s.bikes > s.capacity || s.target < 0 ||
        s.target > s.capacity) {
      throw std::invalid_argument("station " + s.station_id +
                                  " violates 0 <= bikes, target <= capacity");
    }
  }
  if (distances.size() != n) throw std::invalid_argument("distance matrix size mismatch");
  for (std::size_t i = 0; i < n; ++i) {
    if (distances[i].size() != n) throw std::invalid_argument("distance matrix not square");
    if (distances[i][i] != 0.0) throw std::invalid_argument("distance matrix diagonal not zero");
    for (std::size_t j = 0; j < i; ++j) {
      if (distances[i][j] != distances[j][i]) {
        throw std::invalid_argument("distance matrix not symmetric");
      }
    }
  }
  if (depot.has_value() != !depot_distances.empty() && !stations.empty()) {
    throw std::invalid_argument("depot distances must be present exactly when a depot is set");
  }
  if (depot && depot_distances.size() != n) {
    throw std::invalid_argument("depot distance vector size mismatch");
  }
}

RebalanceInstance make_instance(std::vector<StationState> stations, int truck_capacity,
                                int truck_start_load, std::optional<GeoPoint> depot) {
  RebalanceInstance inst;
  std::sort(stations.begin(), stations.end(),
            [](const StationState& a, const StationState& b) {
              return a.station_id < b.station_id;
            });
  inst.stations = std::move(stations);
  inst.truck_capacity = truck_capacity;
  inst.truck_start_load = truck_start_load;
  inst.depot = depot;
  const std::size_t n = inst.stations.size();
  inst.distances.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = manhattan_m(inst.stations[i].location, inst.stations[j].location);
      inst.distances[i][j] = d;
      inst.distances[j][i] = d;
    }
  }
  if (depot) {
    check_valid(*depot, "depot");
    inst.depot_distances.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      inst.depot_distances[i] = manhattan_m(*depot, inst.stations[i].location);
    }
  }
  inst.validate();
  return inst;
}

namespace {

/// Greedy bound-extremal transfer at a station given the truck load:
/// full correction when it fits, else whatever space or load allows.
int greedy_transfer(const StationState& s, int load, int capacity) {
  const int surplus = s.bikes - s.target;
  if (surplus > 0) return std::min(surplus, capacity - load);
  if (surplus < 0) return -std::min(-surplus, load);
  return 0;
}

double leg_distance(const RebalanceInstance& inst, int from, int to) {
  if (from < 0) return inst.depot ? inst.depot_distances[static_cast<std::size_t>(to)] : 0.0;
  return inst.distances[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)];
}

struct EvalResult {
  std::vector<int> visited;      // station indices, visit order
  std::vector<int> transfer;     // parallel to visited, signed
  std::vector<int> load_before;  // parallel to visited
  int final_load = 0;
  long long met = 0;
  double dist = 0.0;
};

/// Walks an order of station indices, applying greedy transfers and
/// skipping stations that would get a zero transfer at their turn.
EvalResult evaluate_order(const RebalanceInstance& inst, std::span<const int> order) {
  EvalResult r;
  int load = inst.truck_start_load;
  int pos = -1;
  for (int idx : order) {
    const int t = greedy_transfer(inst.stations[static_cast<std::size_t>(idx)], load,
                                  inst.truck_capacity);
    if (t == 0) continue;
    r.dist += leg_distance(inst, pos, idx);
    r.visited.push_back(idx);
    r.transfer.push_back(t);
    r.load_before.push_back(load);
    r.met += std::abs(t);
    load += t;
    pos = idx;
  }
  r.final_load = load;
  return r;
}

TruckPlan plan_from_eval(const RebalanceInstance& inst, const EvalResult& eval) {
  TruckPlan plan;
  plan.start_load = inst.truck_start_load;
  plan.final_load = eval.final_load;
  plan.total_distance_m = eval.dist;
  plan.met_demand = eval.met;
  std::vector<int> bikes_after(inst.stations.size());
  for (std::size_t i = 0; i < inst.stations.size(); ++i) bikes_after[i] = inst.stations[i].bikes;
  for (std::size_t k = 0; k < eval.visited.size(); ++k) {
    const int idx = eval.visited[k];
    TruckStop stop;
    stop.station_id = inst.stations[static_cast<std::size_t>(idx)].station_id;
    stop.transfer = eval.transfer[k];
    stop.load_after = eval.load_before[k] + eval.transfer[k];
    plan.stops.push_back(std::move(stop));
    plan.load_trace.push_back(eval.load_before[k]);
    bikes_after[static_cast<std::size_t>(idx)] -= eval.transfer[k];
  }
  for (std::size_t i = 0; i < inst.stations.size(); ++i) {
    const int residual = bikes_after[i] - inst.stations[i].target;
    if (residual != 0) plan.unmet[inst.stations[i].station_id] = residual;
  }
  return plan;
}

std::vector<int> active_stations(const RebalanceInstance& inst) {
  std::vector<int> active;
  for (std::size_t i = 0; i < inst.stations.size(); ++i) {
    if (inst.stations[i].bikes != inst.stations[i].target) {
      active.push_back(static_cast<int>(i));
    }
  }
  return active;
}

/// Depth-first search over visit sequences of the active stations.
/// Every prefix is a complete candidate plan; children extend it with
/// any yet-unvisited station whose greedy transfer is nonzero, so the
/// search space is exactly the feasible skip-aware routes.
class RouteSearch {
 public:
  explicit RouteSearch(const RebalanceInstance& inst) : inst_(inst) {
    active_ = active_stations(inst);
    used_.assign(inst_.stations.size(), 0);
    long long total = 0;
    for (int idx : active_) {
      total += std::abs(inst_.stations[static_cast<std::size_t>(idx)].bikes -
                        inst_.stations[static_cast<std::size_t>(idx)].target);
    }
    remaining_abs_ = total;
  }

  std::vector<int> run() {
    dfs(-1, inst_.truck_start_load, 0, 0.0);
    return best_seq_;
  }

 private:
  void consider(long long met, double dist) {
    if (met > best_met_ || (met == best_met_ && dist < best_dist_)) {
      best_met_ = met;
      best_dist_ = dist;
      best_seq_ = seq_;
    }
  }

  void dfs(int pos, int load, long long met, double dist) {
    consider(met, dist);
    if (met + remaining_abs_ < best_met_) return;
    if (met + remaining_abs_ == best_met_ && dist >= best_dist_) return;
    for (int idx : active_) {
      if (used_[static_cast<std::size_t>(idx)]) continue;
      const int t = greedy_transfer(inst_.stations[static_cast<std::size_t>(idx)], load,
                                    inst_.truck_capacity);
      if (t == 0) continue;
      const long long full =
          std::abs(inst_.stations[static_cast<std::size_t>(idx)].bikes -
                   inst_.stations[static_cast<std::size_t>(idx)].target);
      used_[static_cast<std::size_t>(idx)] = 1;
      seq_.push_back(idx);
      remaining_abs_ -= full;
      dfs(idx, load + t, met + std::abs(t), dist + leg_distance(inst_, pos, idx));
      remaining_abs_ += full;
      seq_.pop_back();
      used_[static_cast<std::size_t>(idx)] = 0;
    }
  }

  const RebalanceInstance& inst_;
  std::vector<int> active_;
  std::vector<char> used_;
  std::vector<int> seq_;
  long long remaining_abs_ = 0;

  long long best_met_ = 0;
  double best_dist_ = 0.0;
  std::vector<int> best_seq_;
};

}  // namespace

TruckPlan solve_route_exact(const RebalanceInstance& instance, int exact_limit) {
  instance.validate();
  const std::vector<int> active = active_stations(instance);
  if (static_cast<int>(active.size()) > exact_limit) {
    throw SizeLimitError("solve_route_exact: " + std::to_string(active.size()) +
                         " stations need a transfer, above the exact-route limit of " +
                         std::to_string(exact_limit) + "; use solve_route_heuristic");
  }
  RouteSearch search(instance);
  const std::vector<int> seq = search.run();
  return plan_from_eval(instance, evaluate_order(instance, seq));
}

namespace {

struct LexScore {
  long long met = 0;
  double dist = 0.0;

  bool better_than(const LexScore& other, double eps) const {
    if (met != other.met) return met > other.met;
    return dist < other.dist - eps;
  }
};

LexScore score_of(const EvalResult& eval) { return {eval.met, eval.dist}; }

}  // namespace

TruckPlan solve_route_heuristic(const RebalanceInstance& instance, std::uint64_t seed) {
  instance.validate();
  const std::vector<int> active = active_stations(instance);
  if (active.empty()) return plan_from_eval(instance, evaluate_order(instance, {}));

  // Nearest-neighbor construction. A deficit stop the truck cannot
  // fully serve defers to the nearest available pickup first.
  std::vector<char> used(instance.stations.size(), 0);
  std::vector<int> order;
  int load = instance.truck_start_load;
  int pos = -1;
  while (true) {
    int next = -1;
    double next_dist = 0.0;
    if (pos < 0 && !instance.depot) {
      // No depot: open at the highest-surplus station needing service.
      int best_surplus = 0;
      for (int idx : active) {
        const auto& s = instance.stations[static_cast<std::size_t>(idx)];
        if (greedy_transfer(s, load, instance.truck_capacity) == 0) continue;
        const int surplus = s.bikes - s.target;
        if (next < 0 || surplus > best_surplus) {
          next = idx;
          best_surplus = surplus;
        }
      }
    } else {
      for (int idx : active) {
        if (used[static_cast<std::size_t>(idx)]) continue;
        const auto& s = instance.stations[static_cast<std::size_t>(idx)];
        if (greedy_transfer(s, load, instance.truck_capacity) == 0) continue;
        const double d = leg_distance(instance, pos, idx);
        if (next < 0 || d < next_dist) {
          next = idx;
          next_dist = d;
        }
      }
    }
    if (next < 0) break;
    const auto& chosen = instance.stations[static_cast<std::size_t>(next)];
    if (chosen.bikes < chosen.target && load < chosen.target - chosen.bikes) {
      // Partial drop ahead; grab the nearest surplus first if any.
      int source = -1;
      double source_dist = 0.0;
      for (int idx : active) {
        if (used[static_cast<std::size_t>(idx)]) continue;
        const auto& s = instance.stations[static_cast<std::size_t>(idx)];
        if (s.bikes <= s.target) continue;
        if (greedy_transfer(s, load, instance.truck_capacity) <= 0) continue;
        const double d = leg_distance(instance, pos, idx);
        if (source < 0 || d < source_dist) {
          source = idx;
          source_dist = d;
        }
      }
      if (source >= 0) next = source;
    }
    used[static_cast<std::size_t>(next)] = 1;
    load += greedy_transfer(instance.stations[static_cast<std::size_t>(next)], load,
                            instance.truck_capacity);
    order.push_back(next);
    pos = next;
  }
  for (int idx : active) {
    if (!used[static_cast<std::size_t>(idx)]) order.push_back(idx);
  }

  // 2-opt segment reversals and single-stop relocations, re-evaluating
  // the whole order each time; accept on (met, distance) lexicographic
  // improvement only. Scan order is seed-shuffled, first improvement.
  Rng rng(seed);
  EvalResult best = evaluate_order(instance, order);
  const int n = static_cast<int>(order.size());
  const int max_rounds = 40;
  for (int round = 0; round < max_rounds && n >= 2; ++round) {
    bool improved = false;
    const double eps = 1e-9 * std::max(1.0, best.dist);

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    }
    rng.shuffle(pairs);
    for (const auto& [i, j] : pairs) {
      std::reverse(order.begin() + i, order.begin() + j + 1);
      EvalResult trial = evaluate_order(instance, order);
      if (score_of(trial).better_than(score_of(best), eps)) {
        best = std::move(trial);
        improved = true;
      } else {
        std::reverse(order.begin() + i, order.begin() + j + 1);
      }
    }

    std::vector<std::pair<int, int>> moves;
    for (int i = 0; i < n; ++i) {
      for (int k = 0; k < n; ++k) {
        if (k != i) moves.emplace_back(i, k);
      }
    }
    rng.shuffle(moves);
    for (const auto& [i, k] : moves) {
      std::vector<int> trial_order = order;
      const int station = trial_order[static_cast<std::size_t>(i)];
      trial_order.erase(trial_order.begin() + i);
      trial_order.insert(trial_order.begin() + k, station);
      EvalResult trial = evaluate_order(instance, trial_order);
      if (score_of(trial).better_than(score_of(best), eps)) {
        best = std::move(trial);
        order = std::move(trial_order);
        improved = true;
      }
    }
    if (!improved) break;
  }
  return plan_from_eval(instance, best);
}

std::vector<StationState> apply_plan(const RebalanceInstance& instance, const TruckPlan& plan) {
  std::vector<StationState> out = instance.stations;
  for (const auto& stop : plan.stops) {
    for (auto& s : out) {
      if (s.station_id == stop.station_id) {
        s.bikes -= stop.transfer;
        break;
      }
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> zone_partition(std::span<const StationState> stations,
                                                     int k, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("zone count must be >= 1");
  const std::size_t n = stations.size();
  std::vector<std::vector<std::size_t>> zones;
  if (k == 1) {
    zones.emplace_back();
    for (std::size_t i = 0; i < n; ++i) zones[0].push_back(i);
    return zones;
  }
  if (static_cast<std::size_t>(k) > n) {
    log_warn("zone_partition: more zones than stations; emitting empty zones");
    for (std::size_t i = 0; i < n; ++i) zones.push_back({i});
    zones.resize(static_cast<std::size_t>(k));
    return zones;
  }

  double ref_lat = 0.0, ref_lon = 0.0;
  for (const auto& s : stations) {
    ref_lat += s.location.lat;
    ref_lon += s.location.lon;
  }
  ref_lat /= static_cast<double>(n);
  ref_lon /= static_cast<double>(n);
  std::vector<PlanarPoint> pts;
  pts.reserve(n);
  for (const auto& s : stations) pts.push_back(project_local(s.location, ref_lat, ref_lon));

  Rng rng(seed);
  std::vector<std::size_t> init(n);
  for (std::size_t i = 0; i < n; ++i) init[i] = i;
  rng.shuffle(init);
  std::vector<PlanarPoint> centroid(static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) centroid[static_cast<std::size_t>(c)] = pts[init[static_cast<std::size_t>(c)]];

  auto sq_dist = [](const PlanarPoint& a, const PlanarPoint& b) {
    const double dx = a.east_m - b.east_m;
    const double dy = a.north_m - b.north_m;
    return dx * dx + dy * dy;
  };

  std::vector<int> assign(n, 0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      int best = 0;
      double best_d = sq_dist(pts[i], centroid[0]);
      for (int c = 1; c < k; ++c) {
        const double d = sq_dist(pts[i], centroid[static_cast<std::size_t>(c)]);
        if (d < best_d) {
          best = c;
          best_d = d;
        }
      }
      if (assign[i] != best) {
        assign[i] = best;
        changed = true;
      }
    }
    std::vector<double> sx(static_cast<std::size_t>(k), 0.0), sy(static_cast<std::size_t>(k), 0.0);
    std::vector<int> count(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < n; ++i) {
      sx[static_cast<std::size_t>(assign[i])] += pts[i].east_m;
      sy[static_cast<std::size_t>(assign[i])] += pts[i].north_m;
      ++count[static_cast<std::size_t>(assign[i])];
    }
    for (int c = 0; c < k; ++c) {
      if (count[static_cast<std::size_t>(c)] > 0) {
        centroid[static_cast<std::size_t>(c)] = {sx[static_cast<std::size_t>(c)] / count[static_cast<std::size_t>(c)],
                                                 sy[static_cast<std::size_t>(c)] / count[static_cast<std::size_t>(c)]};
      } else {
        // Re-seed an empty cluster on the point farthest from its own
        // centroid, so every zone ends up non-empty.
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double d = sq_dist(pts[i], centroid[static_cast<std::size_t>(assign[i])]);
          if (d > far_d) {
            far = i;
            far_d = d;
          }
        }
        centroid[static_cast<std::size_t>(c)] = pts[far];
        assign[far] = c;
        changed = true;
      }
    }
    if (!changed) break;
  }

  std::vector<std::vector<std::size_t>> grouped(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < n; ++i) grouped[static_cast<std::size_t>(assign[i])].push_back(i);
  std::sort(grouped.begin(), grouped.end(), [](const auto& a, const auto& b) {
    if (a.empty() || b.empty()) return !a.empty();
    return a.front() < b.front();
  });
  return grouped;
}

std::vector<RebalancePass> schedule_passes(int year, int month, int day) {
  const Timestamp midnight = timestamp_of_date(year, month, day);
  std::vector<RebalancePass> passes;
  passes.push_back({midnight + 11 * 3600, kMorningWindow});
  passes.push_back({midnight + 19 * 3600, kEveningWindow});
  passes.push_back({midnight + 27 * 3600, kFullDayWindow});
  return passes;
}

namespace {

bool parse_double_field(const std::string& s, double& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

bool parse_int_field(const std::string& s, int& out) {
  const char* begin = s.data();
  const char* end = begin + s.size();
  auto res = std::from_chars(begin, end, out);
  return res.ec == std::errc() && res.ptr == end;
}

}  // namespace

ParsedStates parse_station_states(const std::string& path) {
  const CsvTable table = read_csv_file(path);
  ParsedStates out;
  const int c_id = table.column("id");
  const int c_lat = table.column("lat");
  const int c_lon = table.column("lon");
  const int c_bikes = table.column("bikes");
  const int c_cap = table.column("capacity");
  for (const char* col : {"id", "lat", "lon", "bikes", "capacity"}) {
    if (table.column(col) < 0) {
      throw DataError("station-state file " + path + " is missing column '" + col + "'");
    }
  }
  const std::size_t need =
      static_cast<std::size_t>(std::max({c_id, c_lat, c_lon, c_bikes, c_cap})) + 1;
  std::unordered_set<StationId> seen;
  for (const auto& row : table.rows) {
    if (row.size() < need) {
      out.report.reject("missing field");
      continue;
    }
    StationState s;
    s.station_id = row[static_cast<std::size_t>(c_id)];
    if (s.station_id.empty()) {
      out.report.reject("empty id");
      continue;
    }
    if (!parse_double_field(row[static_cast<std::size_t>(c_lat)], s.location.lat) ||
        !parse_double_field(row[static_cast<std::size_t>(c_lon)], s.location.lon) ||
        !is_valid(s.location)) {
      out.report.reject("bad coordinates");
      continue;
    }
    if (!parse_int_field(row[static_cast<std::size_t>(c_cap)], s.capacity) || s.capacity < 1 ||
        !parse_int_field(row[static_cast<std::size_t>(c_bikes)], s.bikes) || s.bikes < 0 ||
        s.bikes > s.capacity) {
      out.report.reject("bad count");
      continue;
    }
    if (!seen.insert(s.station_id).second) {
      throw DataError("duplicate station id '" + s.station_id + "' in " + path);
    }
    out.states.push_back(std::move(s));
    ++out.report.accepted;
  }
  return out;
}

std::string station_states_to_csv(std::span<const StationState> states) {
  std::string out = "id,lat,lon,bikes,capacity\n";
  for (const auto& s : states) {
    out += csv_field(s.station_id);
    out += ',';
    out += format_double(s.location.lat);
    out += ',';
    out += format_double(s.location.lon);
    out += ',';
    out += std::to_string(s.bikes);
    out += ',';
    out += std::to_string(s.capacity);
    out += '\n';
  }
  return out;
}

void write_station_states(const std::string& path, std::span<const StationState> states) {
  write_file(path, station_states_to_csv(states));
}

}  // namespace bss
