#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "bss/geo.hpp"
#include "bss/types.hpp"

namespace bss {

enum class Tier { Small, Medium, Large };

std::string to_string(Tier tier);
Tier tier_from_string(const std::string& s);

/// The 0-1 station-placement program: choose at most n_max sites,
/// at most m_max of them medium and l_max large, every chosen pair at
/// least dm_m apart, and (when the anti-isolation constraint is on and
/// two or more sites are chosen) every chosen site within dl_m of
/// another chosen site. The objective is the sum of chosen base values
/// scaled by the tier multiplier alpha/beta/gamma.
///
/// Caps above n_max are treated as n_max; a selection can never exceed
/// the total budget anyway.
struct PlacementModel {
  std::vector<CandidateLocation> candidates;
  int n_max = 1;
  int m_max = 0;
  int l_max = 0;
  double dm_m = 300.0;
  double dl_m = 1500.0;
  double alpha = 1.0;
  double beta = 1.5;
  double gamma = 2.0;
  Metric metric = Metric::GreatCircle;
  bool isolation_constraint = true;

  /// Throws std::invalid_argument when a field violates the model
  /// invariants (n_max >= 1, 0 < dm < dl, 0 < alpha <= beta <= gamma,
  /// unique candidate ids, valid coordinates, non-negative values).
  void validate() const;

  double multiplier(Tier t) const {
    return t == Tier::Small ? alpha : t == Tier::Medium ? beta : gamma;
  }
};

struct Placement {
  std::map<CandidateId, Tier> assignment;
  double objective = 0.0;
  /// True when the solver could not place any station (empty result on
  /// a model that asked for stations).
  bool feasible_empty = false;
};

/// Per-candidate neighbor sets by index, symmetric, self excluded.
struct NeighborIndex {
  std::vector<std::vector<std::uint32_t>> within_dm;
  std::vector<std::vector<std::uint32_t>> within_dl;
};

NeighborIndex build_neighbor_index(std::span<const CandidateLocation> candidates,
                                   double dm_m, double dl_m, Metric metric);

inline constexpr int kDefaultPlacementExactLimit = 24;

/// Provably optimal placement by depth-first branch-and-bound over
/// candidates in descending value order. Ties between equal-objective
/// optima go to the lexicographically smallest assigned id set, then
/// the smallest tier letters, so output is deterministic. Throws
/// SizeLimitError when the candidate count exceeds exact_limit.
Placement solve_exact(const PlacementModel& model,
                      int exact_limit = kDefaultPlacementExactLimit);

/// Greedy construction followed by first-improvement local search over
/// {swap assigned/unassigned, change tier, relocate} with scan order
/// shuffled by seed. Deterministic for a fixed seed. Feasible by the
/// same rules as solve_exact; objective never exceeds the exact optimum.
Placement solve_heuristic(const PlacementModel& model, std::uint64_t seed);

/// Same, but starts local search from `warm` (which must be feasible
/// for this model) after topping it up greedily; used by sweep_n to
/// keep the objective monotone in N.
Placement solve_heuristic_warm(const PlacementModel& model, std::uint64_t seed,
                               const Placement& warm);

/// Objective for each budget N in n_values (ascending). Warm-starts
/// every step from the previous solution and keeps the better of the
/// warm and fresh runs, so the series is non-decreasing.
std::vector<std::pair<int, double>> sweep_n(const PlacementModel& model,
                                            std::span<const int> n_values,
                                            std::uint64_t seed);

}  // namespace bss
