#pragma once

// Shared test machinery: independent distance math, feasibility
// validators that recompute everything from scratch, brute-force
// oracles, and seeded instance generators. The math here is written
// separately from the library (different formulations on purpose) so
// validators and implementation cannot share a bug.

#include <cstdint>
#include <string>
#include <vector>

#include "bss/geo.hpp"
#include "bss/placement.hpp"
#include "bss/rebalance.hpp"

namespace bss::test {

// Haversine via the atan2 formulation (the library uses asin).
double oracle_haversine(const GeoPoint& a, const GeoPoint& b);
double oracle_manhattan(const GeoPoint& a, const GeoPoint& b);
double oracle_distance(Metric metric, const GeoPoint& a, const GeoPoint& b);

/// Accumulated validator verdict. Empty `violations` means pass.
struct CheckResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
  void fail(std::string what) { violations.push_back(std::move(what)); }
  std::string describe() const;
};

/// Recomputes every Placement invariant from scratch: ids resolve,
/// counts within caps, pairwise spacing >= dm, anti-isolation when
/// enabled, objective matches an independent recomputation, and the
/// feasible_empty flag agrees with the assignment.
CheckResult check_placement(const PlacementModel& model, const Placement& placement);

/// Exhaustive subset enumeration: every subset of at most n_max
/// candidates, feasibility checked with the independent distance math,
/// tiers assigned rearrangement-optimally. Returns the best objective.
/// Candidate counts beyond ~16 are not sensible here.
double placement_oracle(const PlacementModel& model);

/// Recomputes every TruckPlan invariant: stop uniqueness, load trace
/// bounds and recurrence, transfer direction/magnitude bounds,
/// conservation, met-demand total, distance re-summation, and the
/// post-state/unmet bookkeeping for all stations (visited or not).
CheckResult check_plan(const RebalanceInstance& instance, const TruckPlan& plan);

struct RouteScore {
  long long met = 0;
  double dist = 0.0;
};

/// Factorial brute force: every visit order of the active stations,
/// transfers set to the greedy extreme along the walk, zero-transfer
/// visits skipped. Returns the lexicographically best (met demand
/// desc, distance asc) score.
RouteScore rebalance_oracle(const RebalanceInstance& instance);

/// Small instance for the exact-vs-oracle suite: <= 12 candidates in a
/// tight box so spacing and isolation both bind, integer values,
/// n_max <= 4, both tier caps drawn within the budget.
PlacementModel random_oracle_model(std::uint64_t seed);

/// Fuzz-scale instance: up to `max_candidates` candidates, real
/// values, random caps, random metric, isolation on or off.
PlacementModel random_fuzz_model(std::uint64_t seed, int max_candidates);

/// Instance with `max_active` or fewer stations off target plus a few
/// balanced ones; random truck, sometimes a depot.
RebalanceInstance random_rebalance_instance(std::uint64_t seed, int max_active);

/// Fresh private directory under the system temp root.
std::string make_temp_dir(const std::string& tag);
void remove_tree(const std::string& path);

/// Path of the CLI binary under test.
std::string cli_bin();

/// Runs a shell command, captures stdout/stderr, returns the exit code
/// (-1 when the process died abnormally).
int run_shell(const std::string& cmd, std::string* out = nullptr, std::string* err = nullptr);

/// Runs the CLI binary with `args` appended.
int run_cli(const std::string& args, std::string* out = nullptr, std::string* err = nullptr);

}  // namespace bss::test
