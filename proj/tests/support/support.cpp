#include "support.hpp"

#include <sys/wait.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "bss/rand.hpp"

namespace bss::test {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEarthRadius = 6371000.0;
constexpr double kMetersPerDeg = 111320.0;

double rad(double deg) { return deg * kPi / 180.0; }

}  // namespace

double oracle_haversine(const GeoPoint& a, const GeoPoint& b) {
  const double dlat = rad(b.lat - a.lat);
  const double dlon = rad(b.lon - a.lon);
  const double sl = std::sin(dlat / 2.0);
  const double so = std::sin(dlon / 2.0);
  const double h = sl * sl + std::cos(rad(a.lat)) * std::cos(rad(b.lat)) * so * so;
  return 2.0 * kEarthRadius * std::atan2(std::sqrt(h), std::sqrt(1.0 - h));
}

double oracle_manhattan(const GeoPoint& a, const GeoPoint& b) {
  const double mean_lat = rad((a.lat + b.lat) / 2.0);
  const double east = (b.lon - a.lon) * std::cos(mean_lat) * kMetersPerDeg;
  const double north = (b.lat - a.lat) * kMetersPerDeg;
  return std::fabs(east) + std::fabs(north);
}

double oracle_distance(Metric metric, const GeoPoint& a, const GeoPoint& b) {
  return metric == Metric::GreatCircle ? oracle_haversine(a, b) : oracle_manhattan(a, b);
}

std::string CheckResult::describe() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v << "; ";
  return os.str();
}

CheckResult check_placement(const PlacementModel& model, const Placement& placement) {
  CheckResult r;
  std::map<CandidateId, std::size_t> by_id;
  for (std::size_t i = 0; i < model.candidates.size(); ++i) by_id[model.candidates[i].id] = i;

  std::vector<std::size_t> chosen;
  int mediums = 0;
  int larges = 0;
  double objective = 0.0;
  for (const auto& [id, tier] : placement.assignment) {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      r.fail("assigned id not a candidate: " + id);
      continue;
    }
    chosen.push_back(it->second);
    if (tier == Tier::Medium) ++mediums;
    if (tier == Tier::Large) ++larges;
    objective += model.candidates[it->second].base_value * model.multiplier(tier);
  }

  if (static_cast<int>(placement.assignment.size()) > model.n_max) r.fail("over n_max");
  if (mediums > model.m_max) r.fail("over m_max");
  if (larges > model.l_max) r.fail("over l_max");

  // Spacing and isolation, with a 1e-6 m slack so boundary-exact pairs
  // never flip on formulation differences.
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    bool has_companion = false;
    for (std::size_t j = 0; j < chosen.size(); ++j) {
      if (i == j) continue;
      const double d = oracle_distance(model.metric, model.candidates[chosen[i]].location,
                                       model.candidates[chosen[j]].location);
      if (j > i && d < model.dm_m - 1e-6) {
        r.fail("spacing violation: " + model.candidates[chosen[i]].id + " vs " +
               model.candidates[chosen[j]].id);
      }
      if (d <= model.dl_m + 1e-6) has_companion = true;
    }
    if (model.isolation_constraint && chosen.size() >= 2 && !has_companion) {
      r.fail("isolated site: " + model.candidates[chosen[i]].id);
    }
  }

  const double tol = 1e-9 * std::max(1.0, std::fabs(objective));
  if (std::fabs(objective - placement.objective) > tol) {
    r.fail("objective mismatch: reported " + std::to_string(placement.objective) +
           " recomputed " + std::to_string(objective));
  }
  if (placement.feasible_empty != placement.assignment.empty()) {
    r.fail("feasible_empty flag inconsistent with assignment");
  }
  return r;
}

double placement_oracle(const PlacementModel& model) {
  const int n = static_cast<int>(model.candidates.size());
  std::vector<std::vector<double>> dist(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      dist[i][j] = dist[j][i] = oracle_distance(model.metric, model.candidates[i].location,
                                                model.candidates[j].location);
    }
  }

  double best = 0.0;  // the empty selection is always feasible
  std::vector<int> members;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    if (std::popcount(mask) > model.n_max) continue;
    members.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) members.push_back(i);
    }
    bool feasible = true;
    for (std::size_t a = 0; a < members.size() && feasible; ++a) {
      bool companion = false;
      for (std::size_t b = 0; b < members.size(); ++b) {
        if (a == b) continue;
        const double d = dist[members[a]][members[b]];
        if (d < model.dm_m) feasible = false;
        if (d <= model.dl_m) companion = true;
      }
      if (model.isolation_constraint && members.size() >= 2 && !companion) feasible = false;
    }
    if (!feasible) continue;

    // Rearrangement-optimal tiers: largest values get the largest
    // multipliers, the caps permitting.
    std::vector<double> values;
    for (int i : members) values.push_back(model.candidates[i].base_value);
    std::sort(values.begin(), values.end(), std::greater<>());
    const int k = static_cast<int>(values.size());
    const int n_large = std::min(model.l_max, k);
    const int n_medium = std::min(model.m_max, k - n_large);
    double objective = 0.0;
    for (int i = 0; i < k; ++i) {
      const double mult = i < n_large              ? model.gamma
                          : i < n_large + n_medium ? model.beta
                                                   : model.alpha;
      objective += values[static_cast<std::size_t>(i)] * mult;
    }
    best = std::max(best, objective);
  }
  return best;
}

CheckResult check_plan(const RebalanceInstance& instance, const TruckPlan& plan) {
  CheckResult r;
  std::map<StationId, std::size_t> by_id;
  for (std::size_t i = 0; i < instance.stations.size(); ++i) {
    by_id[instance.stations[i].station_id] = i;
  }

  if (plan.load_trace.size() != plan.stops.size()) r.fail("load_trace length mismatch");
  if (!plan.stops.empty() && !plan.load_trace.empty() &&
      plan.load_trace.front() != plan.start_load) {
    r.fail("load_trace does not start at start_load");
  }
  if (plan.start_load != instance.truck_start_load) r.fail("start_load mismatch");

  std::set<StationId> seen;
  std::map<std::size_t, int> bikes_after;
  for (std::size_t i = 0; i < instance.stations.size(); ++i) {
    bikes_after[i] = instance.stations[i].bikes;
  }

  int load = plan.start_load;
  long long met = 0;
  long long transfer_sum = 0;
  double dist = 0.0;
  int prev = -1;
  for (std::size_t k = 0; k < plan.stops.size(); ++k) {
    const auto& stop = plan.stops[k];
    auto it = by_id.find(stop.station_id);
    if (it == by_id.end()) {
      r.fail("stop at unknown station " + stop.station_id);
      continue;
    }
    if (!seen.insert(stop.station_id).second) r.fail("station visited twice: " + stop.station_id);
    const std::size_t idx = it->second;
    const auto& s = instance.stations[idx];

    if (stop.transfer == 0) r.fail("zero-transfer stop at " + stop.station_id);
    const int deviation = s.bikes - s.target;
    if (deviation > 0 && stop.transfer <= 0) r.fail("drop at surplus station " + stop.station_id);
    if (deviation < 0 && stop.transfer >= 0) r.fail("pickup at deficit station " + stop.station_id);
    if (deviation == 0 && stop.transfer != 0) r.fail("transfer at balanced station " + stop.station_id);
    if (std::abs(stop.transfer) > std::abs(deviation)) {
      r.fail("transfer past target at " + stop.station_id);
    }
    if (stop.transfer > 0 && stop.transfer > s.bikes) r.fail("pickup exceeds bikes");
    if (stop.transfer < 0 && -stop.transfer > s.capacity - s.bikes) r.fail("drop exceeds docks");

    if (k < plan.load_trace.size() && plan.load_trace[k] != load) {
      r.fail("load_trace breaks recurrence at stop " + std::to_string(k));
    }
    load += stop.transfer;
    if (load < 0 || load > instance.truck_capacity) {
      r.fail("load out of [0, B] after " + stop.station_id);
    }
    if (stop.load_after != load) r.fail("load_after mismatch at " + stop.station_id);

    if (prev < 0) {
      if (instance.depot) dist += instance.depot_distances[idx];
    } else {
      dist += instance.distances[static_cast<std::size_t>(prev)][idx];
    }
    prev = static_cast<int>(idx);
    met += std::abs(stop.transfer);
    transfer_sum += stop.transfer;
    bikes_after[idx] -= stop.transfer;
  }

  if (plan.final_load != load) r.fail("final_load mismatch");
  if (transfer_sum != plan.final_load - plan.start_load) r.fail("conservation violated");
  if (met != plan.met_demand) r.fail("met_demand miscounted");
  if (std::fabs(dist - plan.total_distance_m) > 1e-9 * std::max(1.0, dist)) {
    r.fail("total_distance mismatch: reported " + std::to_string(plan.total_distance_m) +
           " recomputed " + std::to_string(dist));
  }

  for (std::size_t i = 0; i < instance.stations.size(); ++i) {
    const auto& s = instance.stations[i];
    const int b = bikes_after[i];
    if (b < 0 || b > s.capacity) r.fail("post-state bikes out of range at " + s.station_id);
    const int residual = b - s.target;
    auto it = plan.unmet.find(s.station_id);
    if (residual == 0 && it != plan.unmet.end()) r.fail("balanced station listed unmet");
    if (residual != 0 && (it == plan.unmet.end() || it->second != residual)) {
      r.fail("unmet residual wrong for " + s.station_id);
    }
  }
  for (const auto& [id, residual] : plan.unmet) {
    if (!by_id.count(id)) r.fail("unmet entry for unknown station " + id);
    if (residual == 0) r.fail("zero unmet entry for " + id);
  }
  return r;
}

RouteScore rebalance_oracle(const RebalanceInstance& instance) {
  std::vector<int> active;
  for (std::size_t i = 0; i < instance.stations.size(); ++i) {
    if (instance.stations[i].bikes != instance.stations[i].target) {
      active.push_back(static_cast<int>(i));
    }
  }

  RouteScore best{-1, 0.0};
  std::vector<int> perm = active;
  do {
    int load = instance.truck_start_load;
    long long met = 0;
    double dist = 0.0;
    int prev = -1;
    for (int idx : perm) {
      const auto& s = instance.stations[static_cast<std::size_t>(idx)];
      int t = 0;
      if (s.bikes > s.target) {
        t = std::min(s.bikes - s.target, instance.truck_capacity - load);
      } else {
        t = -std::min(s.target - s.bikes, load);
      }
      if (t == 0) continue;
      if (prev < 0) {
        if (instance.depot) dist += instance.depot_distances[static_cast<std::size_t>(idx)];
      } else {
        dist += instance.distances[static_cast<std::size_t>(prev)][static_cast<std::size_t>(idx)];
      }
      prev = idx;
      load += t;
      met += std::abs(t);
    }
    if (met > best.met || (met == best.met && dist < best.dist)) best = {met, dist};
  } while (std::next_permutation(perm.begin(), perm.end()));
  if (best.met < 0) best = {0, 0.0};
  return best;
}

PlacementModel random_oracle_model(std::uint64_t seed) {
  Rng rng(seed);
  PlacementModel m;
  const int n = static_cast<int>(rng.uniform_int(1, 12));
  for (int i = 0; i < n; ++i) {
    CandidateLocation c;
    char id[8];
    std::snprintf(id, sizeof id, "c%02d", i);
    c.id = id;
    c.location.lat = 38.88 + rng.uniform(0.0, 0.014);
    c.location.lon = -77.05 + rng.uniform(0.0, 0.018);
    c.base_value = static_cast<double>(rng.uniform_int(0, 20));
    m.candidates.push_back(std::move(c));
  }
  m.n_max = static_cast<int>(rng.uniform_int(1, 4));
  m.m_max = static_cast<int>(rng.uniform_int(0, m.n_max));
  m.l_max = static_cast<int>(rng.uniform_int(0, m.n_max));
  m.dm_m = 300.0;
  const double dl_choices[] = {600.0, 900.0, 1500.0};
  m.dl_m = dl_choices[rng.uniform_int(0, 2)];
  m.metric = rng.uniform_int(0, 3) == 0 ? Metric::Manhattan : Metric::GreatCircle;
  m.isolation_constraint = true;
  return m;
}

PlacementModel random_fuzz_model(std::uint64_t seed, int max_candidates) {
  Rng rng(seed);
  PlacementModel m;
  const int n = static_cast<int>(rng.uniform_int(1, max_candidates));
  for (int i = 0; i < n; ++i) {
    CandidateLocation c;
    char id[8];
    std::snprintf(id, sizeof id, "c%03d", i);
    c.id = id;
    c.location.lat = 38.85 + rng.uniform(0.0, 0.06);
    c.location.lon = -77.10 + rng.uniform(0.0, 0.08);
    c.base_value = rng.uniform(0.0, 30.0);
    m.candidates.push_back(std::move(c));
  }
  m.n_max = static_cast<int>(rng.uniform_int(1, 60));
  m.m_max = static_cast<int>(rng.uniform_int(0, m.n_max));
  m.l_max = static_cast<int>(rng.uniform_int(0, m.n_max));
  m.dm_m = rng.uniform(100.0, 400.0);
  m.dl_m = m.dm_m + rng.uniform(200.0, 1600.0);
  m.beta = rng.uniform(1.0, 2.0);
  m.gamma = m.beta + rng.uniform(0.0, 1.0);
  m.metric = rng.uniform_int(0, 1) == 0 ? Metric::GreatCircle : Metric::Manhattan;
  m.isolation_constraint = rng.uniform_int(0, 1) == 0;
  return m;
}

RebalanceInstance random_rebalance_instance(std::uint64_t seed, int max_active) {
  Rng rng(seed);
  const int n_active = static_cast<int>(rng.uniform_int(1, max_active));
  const int n_balanced = static_cast<int>(rng.uniform_int(0, 2));
  std::vector<StationState> stations;
  for (int i = 0; i < n_active + n_balanced; ++i) {
    StationState s;
    char id[8];
    std::snprintf(id, sizeof id, "s%02d", i);
    s.station_id = id;
    s.location.lat = 38.88 + rng.uniform(0.0, 0.03);
    s.location.lon = -77.05 + rng.uniform(0.0, 0.03);
    s.capacity = static_cast<int>(rng.uniform_int(4, 20));
    s.kind = rng.uniform_int(0, 1) == 0 ? StationKind::Origin : StationKind::Destination;
    s.target = s.kind == StationKind::Origin ? s.capacity : (s.capacity + 1) / 2;
    if (i < n_active) {
      do {
        s.bikes = static_cast<int>(rng.uniform_int(0, s.capacity));
      } while (s.bikes == s.target);
    } else {
      s.bikes = s.target;
    }
    stations.push_back(std::move(s));
  }
  const int capacity = static_cast<int>(rng.uniform_int(5, 25));
  const int start = static_cast<int>(rng.uniform_int(0, capacity));
  std::optional<GeoPoint> depot;
  if (rng.uniform_int(0, 1) == 0) {
    depot = GeoPoint{38.88 + rng.uniform(0.0, 0.03), -77.05 + rng.uniform(0.0, 0.03)};
  }
  return make_instance(std::move(stations), capacity, start, depot);
}

std::string make_temp_dir(const std::string& tag) {
  std::string tmpl = (std::filesystem::temp_directory_path() / (tag + ".XXXXXX")).string();
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data())) throw std::runtime_error("mkdtemp failed for " + tmpl);
  return std::string(buf.data());
}

void remove_tree(const std::string& path) {
  std::error_code ec;
  std::filesystem::remove_all(path, ec);
}

std::string cli_bin() { return BSS_OPT_BIN; }

int run_shell(const std::string& cmd, std::string* out, std::string* err) {
  const std::string dir = make_temp_dir("bss_cli");
  const std::string out_path = dir + "/out.txt";
  const std::string err_path = dir + "/err.txt";
  const int status = std::system((cmd + " >" + out_path + " 2>" + err_path).c_str());
  const auto slurp = [](const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
  };
  if (out) *out = slurp(out_path);
  if (err) *err = slurp(err_path);
  remove_tree(dir);
  if (!WIFEXITED(status)) return -1;
  return WEXITSTATUS(status);
}

int run_cli(const std::string& args, std::string* out, std::string* err) {
  return run_shell(cli_bin() + " " + args, out, err);
}

}  // namespace bss::test
