#include "bss/placement.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <unordered_set>

#include "bss/log.hpp"
#include "bss/rand.hpp"

namespace bss {

std::string to_string(Tier tier) {
  switch (tier) {
    case Tier::Small: return "small";
    case Tier::Medium: return "medium";
    case Tier::Large: return "large";
  }
  return "small";
}

Tier tier_from_string(const std::string& s) {
  if (s == "small") return Tier::Small;
  if (s == "medium") return Tier::Medium;
  if (s == "large") return Tier::Large;
  throw DataError("unknown tier '" + s + "'");
}

void PlacementModel::validate() const {
  if (n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (m_max < 0 || l_max < 0) throw std::invalid_argument("tier caps must be >= 0");
  if (!(dm_m > 0.0) || !(dl_m > dm_m)) {
    throw std::invalid_argument("spacing bounds must satisfy 0 < dm_m < dl_m");
  }
  if (!(alpha > 0.0) || !(beta >= alpha) || !(gamma >= beta)) {
    throw std::invalid_argument("tier multipliers must satisfy 0 < alpha <= beta <= gamma");
  }
  std::unordered_set<CandidateId> ids;
  for (const auto& c : candidates) {
    if (c.id.empty()) throw std::invalid_argument("candidate with empty id");
    if (!ids.insert(c.id).second) {
      throw std::invalid_argument("duplicate candidate id '" + c.id + "'");
    }
    check_valid(c.location, "candidate " + c.id);
    if (!(c.base_value >= 0.0)) {
      throw std::invalid_argument("candidate " + c.id + " has negative base value");
    }
  }
}

NeighborIndex build_neighbor_index(std::span<const CandidateLocation> candidates,
                                   double dm_m, double dl_m, Metric metric) {
  const std::size_t n = candidates.size();
  NeighborIndex index;
  index.within_dm.assign(n, {});
  index.within_dl.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = distance_m(metric, candidates[i].location, candidates[j].location);
      if (d <= dl_m) {
        index.within_dl[i].push_back(static_cast<std::uint32_t>(j));
        index.within_dl[j].push_back(static_cast<std::uint32_t>(i));
        if (d <= dm_m) {
          index.within_dm[i].push_back(static_cast<std::uint32_t>(j));
          index.within_dm[j].push_back(static_cast<std::uint32_t>(i));
        }
      }
    }
  }
  for (auto& v : index.within_dm) std::sort(v.begin(), v.end());
  for (auto& v : index.within_dl) std::sort(v.begin(), v.end());
  return index;
}

namespace {

constexpr int kNone = -1;
constexpr int kSmall = 0;
constexpr int kMedium = 1;
constexpr int kLarge = 2;

char tier_letter(int t) { return t == kLarge ? 'l' : t == kMedium ? 'm' : 's'; }

Tier tier_from_int(int t) {
  return t == kLarge ? Tier::Large : t == kMedium ? Tier::Medium : Tier::Small;
}

/// Shared solver state: values, neighbor sets, effective caps
/// (caps above n_max act as n_max).
struct Ctx {
  const PlacementModel& model;
  int n;
  int cap_n, cap_m, cap_l;
  double mult[3];
  std::vector<double> value;
  NeighborIndex nbr;

  explicit Ctx(const PlacementModel& m)
      : model(m), n(static_cast<int>(m.candidates.size())) {
    cap_n = m.n_max;
    cap_m = std::min(m.m_max, m.n_max);
    cap_l = std::min(m.l_max, m.n_max);
    mult[kSmall] = m.alpha;
    mult[kMedium] = m.beta;
    mult[kLarge] = m.gamma;
    value.reserve(static_cast<std::size_t>(n));
    for (const auto& c : m.candidates) value.push_back(c.base_value);
    nbr = build_neighbor_index(m.candidates, m.dm_m, m.dl_m, m.metric);
  }

  const CandidateId& id(int i) const {
    return model.candidates[static_cast<std::size_t>(i)].id;
  }

  /// Objective of an assignment, summed in index order.
  double objective(const std::vector<int8_t>& tier_of) const {
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      if (tier_of[static_cast<std::size_t>(i)] != kNone) {
        total += value[static_cast<std::size_t>(i)] *
                 mult[tier_of[static_cast<std::size_t>(i)]];
      }
    }
    return total;
  }

  Placement to_placement(const std::vector<int8_t>& tier_of) const {
    Placement p;
    for (int i = 0; i < n; ++i) {
      if (tier_of[static_cast<std::size_t>(i)] != kNone) {
        p.assignment[id(i)] = tier_from_int(tier_of[static_cast<std::size_t>(i)]);
      }
    }
    p.objective = objective(tier_of);
    p.feasible_empty = p.assignment.empty();
    return p;
  }
};

bool contains(const std::vector<std::uint32_t>& sorted, int x) {
  return std::binary_search(sorted.begin(), sorted.end(), static_cast<std::uint32_t>(x));
}

/// Deterministic tie-break between equal-objective solutions:
/// lexicographically smallest sorted id sequence, then smallest tier
/// letters in that order ('l' < 'm' < 's').
struct TieKey {
  std::vector<std::string> ids;
  std::string letters;

  static TieKey of(const Ctx& ctx, const std::vector<int8_t>& tier_of) {
    std::vector<int> chosen;
    for (int i = 0; i < ctx.n; ++i) {
      if (tier_of[static_cast<std::size_t>(i)] != kNone) chosen.push_back(i);
    }
    std::sort(chosen.begin(), chosen.end(),
              [&](int a, int b) { return ctx.id(a) < ctx.id(b); });
    TieKey key;
    for (int i : chosen) {
      key.ids.push_back(ctx.id(i));
      key.letters.push_back(tier_letter(tier_of[static_cast<std::size_t>(i)]));
    }
    return key;
  }

  bool operator<(const TieKey& other) const {
    if (ids != other.ids) {
      return std::lexicographical_compare(ids.begin(), ids.end(), other.ids.begin(),
                                          other.ids.end());
    }
    return letters < other.letters;
  }
};

class ExactSearch {
 public:
  explicit ExactSearch(const Ctx& ctx) : ctx_(ctx) {
    const std::size_t n = static_cast<std::size_t>(ctx_.n);
    tier_of_.assign(n, kNone);
    conflict_.assign(n, 0);
    companions_.assign(n, 0);
    order_.resize(n);
    for (int i = 0; i < ctx_.n; ++i) order_[static_cast<std::size_t>(i)] = i;
    std::sort(order_.begin(), order_.end(), [&](int a, int b) {
      const double va = ctx_.value[static_cast<std::size_t>(a)];
      const double vb = ctx_.value[static_cast<std::size_t>(b)];
      if (va != vb) return va > vb;
      return ctx_.id(a) < ctx_.id(b);
    });
    std::vector<int> pos_of(n, 0);
    for (int p = 0; p < ctx_.n; ++p) pos_of[static_cast<std::size_t>(order_[p])] = p;
    max_dl_pos_.assign(n, -1);
    for (int i = 0; i < ctx_.n; ++i) {
      for (std::uint32_t j : ctx_.nbr.within_dl[static_cast<std::size_t>(i)]) {
        max_dl_pos_[static_cast<std::size_t>(i)] =
            std::max(max_dl_pos_[static_cast<std::size_t>(i)], pos_of[j]);
      }
    }
    best_tier_ = tier_of_;  // empty assignment is always feasible
    best_value_ = 0.0;
    best_key_ = TieKey{};
  }

  Placement run() {
    dfs(0);
    Placement p = ctx_.to_placement(best_tier_);
    if (p.assignment.empty()) {
      log_info("placement: no station could be placed (empty optimum)");
    }
    return p;
  }

 private:
  double tol() const { return 1e-9 * std::max(1.0, std::fabs(best_value_)); }

  double bound_from(int pos) const {
    const int remaining = std::min(ctx_.cap_n - n_used_, ctx_.n - pos);
    const int l_avail = ctx_.cap_l - l_used_;
    const int m_avail = ctx_.cap_m - m_used_;
    double sum = 0.0;
    for (int k = 0; k < remaining; ++k) {
      const double v = ctx_.value[static_cast<std::size_t>(order_[pos + k])];
      const double m =
          k < l_avail ? ctx_.mult[kLarge]
                      : (k < l_avail + m_avail ? ctx_.mult[kMedium] : ctx_.mult[kSmall]);
      sum += v * m;
    }
    return sum;
  }

  void consider_leaf() {
    if (ctx_.model.isolation_constraint && assigned_.size() >= 2) {
      for (int a : assigned_) {
        if (companions_[static_cast<std::size_t>(a)] == 0) return;
      }
    }
    const double v = ctx_.objective(tier_of_);
    if (v > best_value_ + tol()) {
      best_value_ = v;
      best_tier_ = tier_of_;
      best_key_ = TieKey::of(ctx_, tier_of_);
    } else if (v >= best_value_ - tol()) {
      TieKey key = TieKey::of(ctx_, tier_of_);
      if (key < best_key_) {
        best_value_ = std::max(best_value_, v);
        best_tier_ = tier_of_;
        best_key_ = std::move(key);
      }
    }
  }

  void assign(int idx, int t) {
    tier_of_[static_cast<std::size_t>(idx)] = static_cast<int8_t>(t);
    ++n_used_;
    if (t == kMedium) ++m_used_;
    if (t == kLarge) ++l_used_;
    cur_value_ += ctx_.value[static_cast<std::size_t>(idx)] * ctx_.mult[t];
    assigned_.push_back(idx);
    for (std::uint32_t j : ctx_.nbr.within_dm[static_cast<std::size_t>(idx)]) ++conflict_[j];
    for (std::uint32_t j : ctx_.nbr.within_dl[static_cast<std::size_t>(idx)]) ++companions_[j];
  }

  void unassign(int idx, int t) {
    tier_of_[static_cast<std::size_t>(idx)] = kNone;
    --n_used_;
    if (t == kMedium) --m_used_;
    if (t == kLarge) --l_used_;
    cur_value_ -= ctx_.value[static_cast<std::size_t>(idx)] * ctx_.mult[t];
    assigned_.pop_back();
    for (std::uint32_t j : ctx_.nbr.within_dm[static_cast<std::size_t>(idx)]) --conflict_[j];
    for (std::uint32_t j : ctx_.nbr.within_dl[static_cast<std::size_t>(idx)]) --companions_[j];
  }

  void dfs(int pos) {
    if (pos == ctx_.n || n_used_ == ctx_.cap_n) {
      consider_leaf();
      return;
    }
    if (ctx_.model.isolation_constraint) {
      // A chosen site whose every potential dl-companion has already
      // been branched None can never satisfy anti-isolation again.
      for (int a : assigned_) {
        if (companions_[static_cast<std::size_t>(a)] == 0 &&
            max_dl_pos_[static_cast<std::size_t>(a)] < pos) {
          if (assigned_.size() >= 2) return;
          consider_leaf();  // a lone station may stay alone
          return;
        }
      }
    }
    if (cur_value_ + bound_from(pos) < best_value_ - tol()) return;

    const int idx = order_[static_cast<std::size_t>(pos)];
    if (conflict_[static_cast<std::size_t>(idx)] == 0) {
      if (l_used_ < ctx_.cap_l) {
        assign(idx, kLarge);
        dfs(pos + 1);
        unassign(idx, kLarge);
      }
      if (m_used_ < ctx_.cap_m) {
        assign(idx, kMedium);
        dfs(pos + 1);
        unassign(idx, kMedium);
      }
      assign(idx, kSmall);
      dfs(pos + 1);
      unassign(idx, kSmall);
    }
    dfs(pos + 1);
  }

  const Ctx& ctx_;
  std::vector<int8_t> tier_of_;
  std::vector<int> conflict_;    // chosen sites within dm, per candidate
  std::vector<int> companions_;  // chosen sites within dl, per candidate
  std::vector<int> assigned_;
  std::vector<int> order_;       // position -> candidate index, value-descending
  std::vector<int> max_dl_pos_;  // latest position among a candidate's dl-neighbors
  int n_used_ = 0, m_used_ = 0, l_used_ = 0;
  double cur_value_ = 0.0;

  double best_value_ = 0.0;
  std::vector<int8_t> best_tier_;
  TieKey best_key_;
};

class LocalSearch {
 public:
  LocalSearch(const Ctx& ctx, std::uint64_t seed) : ctx_(ctx), rng_(seed) {
    tier_of_.assign(static_cast<std::size_t>(ctx_.n), kNone);
    conflict_.assign(static_cast<std::size_t>(ctx_.n), 0);
    companions_.assign(static_cast<std::size_t>(ctx_.n), 0);
  }

  void seed_assignment(const Placement& warm) {
    for (const auto& [id, tier] : warm.assignment) {
      int idx = -1;
      for (int i = 0; i < ctx_.n; ++i) {
        if (ctx_.id(i) == id) {
          idx = i;
          break;
        }
      }
      if (idx < 0) {
        throw std::invalid_argument("warm-start id '" + id + "' is not in the model");
      }
      const int t = tier == Tier::Large ? kLarge : tier == Tier::Medium ? kMedium : kSmall;
      assign(idx, t);
    }
    if (n_used_ > ctx_.cap_n || m_used_ > ctx_.cap_m || l_used_ > ctx_.cap_l) {
      throw std::invalid_argument("warm-start placement exceeds the model caps");
    }
  }

  /// Greedy construction: repeatedly take the highest-value feasible
  /// site at the best tier the budget still allows.
  void greedy_fill() {
    while (n_used_ < ctx_.cap_n) {
      int best = -1;
      for (int i = 0; i < ctx_.n; ++i) {
        if (tier_of_[static_cast<std::size_t>(i)] != kNone) continue;
        if (conflict_[static_cast<std::size_t>(i)] != 0) continue;
        if (best < 0 ||
            ctx_.value[static_cast<std::size_t>(i)] > ctx_.value[static_cast<std::size_t>(best)] ||
            (ctx_.value[static_cast<std::size_t>(i)] ==
                 ctx_.value[static_cast<std::size_t>(best)] &&
             ctx_.id(i) < ctx_.id(best))) {
          best = i;
        }
      }
      if (best < 0) break;
      assign(best, best_tier(kNone));
    }
  }

  /// Greedy leaves spacing satisfied but may strand stations beyond dl
  /// of every other choice. Give each stranded site a companion while
  /// budget lasts, otherwise drop the least valuable stranded site.
  void repair_isolation() {
    if (!ctx_.model.isolation_constraint) return;
    for (int guard = 0; guard < 4 * ctx_.n + 8; ++guard) {
      if (count_assigned() < 2) return;
      int a = -1;
      for (int i = 0; i < ctx_.n; ++i) {
        if (tier_of_[static_cast<std::size_t>(i)] == kNone) continue;
        if (companions_[static_cast<std::size_t>(i)] != 0) continue;
        if (a < 0 ||
            ctx_.value[static_cast<std::size_t>(i)] < ctx_.value[static_cast<std::size_t>(a)] ||
            (ctx_.value[static_cast<std::size_t>(i)] ==
                 ctx_.value[static_cast<std::size_t>(a)] &&
             ctx_.id(i) < ctx_.id(a))) {
          a = i;
        }
      }
      if (a < 0) return;
      if (n_used_ < ctx_.cap_n) {
        int b = -1;
        for (std::uint32_t j : ctx_.nbr.within_dl[static_cast<std::size_t>(a)]) {
          if (tier_of_[j] != kNone || conflict_[j] != 0) continue;
          if (b < 0 || ctx_.value[j] > ctx_.value[static_cast<std::size_t>(b)] ||
              (ctx_.value[j] == ctx_.value[static_cast<std::size_t>(b)] &&
               ctx_.id(static_cast<int>(j)) < ctx_.id(b))) {
            b = static_cast<int>(j);
          }
        }
        if (b >= 0) {
          assign(b, best_tier(kNone));
          continue;
        }
      }
      unassign(a);
    }
  }

  void improve() {
    const int max_passes = 60;
    for (int pass = 0; pass < max_passes; ++pass) {
      bool improved = false;
      if (grow()) improved = true;

      std::vector<int> assigned = assigned_list();
      rng_.shuffle(assigned);
      std::vector<int> unassigned;
      for (int i = 0; i < ctx_.n; ++i) {
        if (tier_of_[static_cast<std::size_t>(i)] == kNone) unassigned.push_back(i);
      }
      rng_.shuffle(unassigned);

      for (int a : assigned) {
        if (tier_of_[static_cast<std::size_t>(a)] == kNone) continue;  // moved away
        if (try_relocate(a, unassigned)) {
          improved = true;
        }
      }
      if (retier()) improved = true;
      if (!improved) break;
    }
  }

  Placement result() const { return ctx_.to_placement(tier_of_); }

 private:
  double eps() const { return 1e-9 * std::max(1.0, std::fabs(ctx_.objective(tier_of_))); }

  int count_assigned() const { return n_used_; }

  std::vector<int> assigned_list() const {
    std::vector<int> out;
    for (int i = 0; i < ctx_.n; ++i) {
      if (tier_of_[static_cast<std::size_t>(i)] != kNone) out.push_back(i);
    }
    return out;
  }

  /// Highest-multiplier tier the budget allows, optionally with one
  /// slot of `freed` returned to the pool first.
  int best_tier(int freed) const {
    const int l_avail = ctx_.cap_l - l_used_ + (freed == kLarge ? 1 : 0);
    const int m_avail = ctx_.cap_m - m_used_ + (freed == kMedium ? 1 : 0);
    if (l_avail > 0) return kLarge;
    if (m_avail > 0) return kMedium;
    return kSmall;
  }

  void assign(int idx, int t) {
    tier_of_[static_cast<std::size_t>(idx)] = static_cast<int8_t>(t);
    ++n_used_;
    if (t == kMedium) ++m_used_;
    if (t == kLarge) ++l_used_;
    for (std::uint32_t j : ctx_.nbr.within_dm[static_cast<std::size_t>(idx)]) ++conflict_[j];
    for (std::uint32_t j : ctx_.nbr.within_dl[static_cast<std::size_t>(idx)]) ++companions_[j];
  }

  void unassign(int idx) {
    const int t = tier_of_[static_cast<std::size_t>(idx)];
    tier_of_[static_cast<std::size_t>(idx)] = kNone;
    --n_used_;
    if (t == kMedium) --m_used_;
    if (t == kLarge) --l_used_;
    for (std::uint32_t j : ctx_.nbr.within_dm[static_cast<std::size_t>(idx)]) --conflict_[j];
    for (std::uint32_t j : ctx_.nbr.within_dl[static_cast<std::size_t>(idx)]) --companions_[j];
  }

  /// Adds feasible sites while budget remains (isolation-checked).
  bool grow() {
    bool any = false;
    while (n_used_ < ctx_.cap_n) {
      int best = -1;
      for (int i = 0; i < ctx_.n; ++i) {
        if (tier_of_[static_cast<std::size_t>(i)] != kNone) continue;
        if (conflict_[static_cast<std::size_t>(i)] != 0) continue;
        if (ctx_.model.isolation_constraint && n_used_ >= 1 &&
            companions_[static_cast<std::size_t>(i)] == 0) {
          continue;
        }
        if (best < 0 ||
            ctx_.value[static_cast<std::size_t>(i)] > ctx_.value[static_cast<std::size_t>(best)] ||
            (ctx_.value[static_cast<std::size_t>(i)] ==
                 ctx_.value[static_cast<std::size_t>(best)] &&
             ctx_.id(i) < ctx_.id(best))) {
          best = i;
        }
      }
      if (best < 0) break;
      const double delta =
          ctx_.value[static_cast<std::size_t>(best)] * ctx_.mult[best_tier(kNone)];
      if (delta <= eps()) break;
      assign(best, best_tier(kNone));
      any = true;
    }
    return any;
  }

  /// Reassigns tiers optimally for the current site set: by the
  /// rearrangement inequality the best allocation gives the largest
  /// multipliers to the highest values, as far as the caps allow.
  bool retier() {
    std::vector<int> chosen = assigned_list();
    std::sort(chosen.begin(), chosen.end(), [&](int a, int b) {
      const double va = ctx_.value[static_cast<std::size_t>(a)];
      const double vb = ctx_.value[static_cast<std::size_t>(b)];
      if (va != vb) return va > vb;
      return ctx_.id(a) < ctx_.id(b);
    });
    const int n = static_cast<int>(chosen.size());
    const int n_large = std::min(ctx_.cap_l, n);
    const int n_medium = std::min(ctx_.cap_m, n - n_large);
    double delta = 0.0;
    std::vector<int8_t> want(static_cast<std::size_t>(n), kSmall);
    for (int k = 0; k < n; ++k) {
      const int t = k < n_large ? kLarge : (k < n_large + n_medium ? kMedium : kSmall);
      want[static_cast<std::size_t>(k)] = static_cast<int8_t>(t);
      const int cur = tier_of_[static_cast<std::size_t>(chosen[static_cast<std::size_t>(k)])];
      delta += ctx_.value[static_cast<std::size_t>(chosen[static_cast<std::size_t>(k)])] *
               (ctx_.mult[t] - ctx_.mult[cur]);
    }
    if (delta <= eps()) return false;
    m_used_ = 0;
    l_used_ = 0;
    for (int k = 0; k < n; ++k) {
      tier_of_[static_cast<std::size_t>(chosen[static_cast<std::size_t>(k)])] =
          want[static_cast<std::size_t>(k)];
      if (want[static_cast<std::size_t>(k)] == kMedium) ++m_used_;
      if (want[static_cast<std::size_t>(k)] == kLarge) ++l_used_;
    }
    return true;
  }

  /// Moves station a to some unassigned site b (possibly at a different
  /// tier). First improvement in the pass's shuffled scan order.
  bool try_relocate(int a, const std::vector<int>& unassigned) {
    const int cur = tier_of_[static_cast<std::size_t>(a)];
    const double v_a = ctx_.value[static_cast<std::size_t>(a)] * ctx_.mult[cur];
    for (int b : unassigned) {
      if (tier_of_[static_cast<std::size_t>(b)] != kNone) continue;  // taken by grow()
      const int conflicts_excl_a =
          conflict_[static_cast<std::size_t>(b)] -
          (contains(ctx_.nbr.within_dm[static_cast<std::size_t>(a)], b) ? 1 : 0);
      if (conflicts_excl_a != 0) continue;
      const int t_b = best_tier(cur);
      const double delta = ctx_.value[static_cast<std::size_t>(b)] * ctx_.mult[t_b] - v_a;
      if (delta <= eps()) continue;
      if (ctx_.model.isolation_constraint && !relocation_keeps_connected(a, b)) continue;
      unassign(a);
      assign(b, t_b);
      return true;
    }
    return false;
  }

  bool relocation_keeps_connected(int a, int b) const {
    if (n_used_ <= 1) return true;  // still <= 1 after the move, or b pairs with survivors
    // b needs a companion among the surviving sites.
    bool b_ok = false;
    for (std::uint32_t j : ctx_.nbr.within_dl[static_cast<std::size_t>(b)]) {
      if (static_cast<int>(j) != a && tier_of_[j] != kNone) {
        b_ok = true;
        break;
      }
    }
    if (!b_ok) return false;
    // Sites whose only companion is a must be within dl of b.
    for (std::uint32_t s : ctx_.nbr.within_dl[static_cast<std::size_t>(a)]) {
      if (tier_of_[s] == kNone) continue;
      if (companions_[s] == 1 &&
          !contains(ctx_.nbr.within_dl[static_cast<std::size_t>(b)], static_cast<int>(s))) {
        return false;
      }
    }
    return true;
  }

  const Ctx& ctx_;
  Rng rng_;
  std::vector<int8_t> tier_of_;
  std::vector<int> conflict_;
  std::vector<int> companions_;
  int n_used_ = 0, m_used_ = 0, l_used_ = 0;
};

}  // namespace

Placement solve_exact(const PlacementModel& model, int exact_limit) {
  model.validate();
  if (static_cast<int>(model.candidates.size()) > exact_limit) {
    throw SizeLimitError("solve_exact: " + std::to_string(model.candidates.size()) +
                         " candidates exceed the exact-size limit of " +
                         std::to_string(exact_limit) + "; use solve_heuristic");
  }
  Ctx ctx(model);
  return ExactSearch(ctx).run();
}

Placement solve_heuristic(const PlacementModel& model, std::uint64_t seed) {
  model.validate();
  Ctx ctx(model);
  LocalSearch ls(ctx, seed);
  ls.greedy_fill();
  ls.repair_isolation();
  ls.improve();
  return ls.result();
}

Placement solve_heuristic_warm(const PlacementModel& model, std::uint64_t seed,
                               const Placement& warm) {
  model.validate();
  Ctx ctx(model);
  LocalSearch ls(ctx, seed);
  ls.seed_assignment(warm);
  ls.improve();
  return ls.result();
}

std::vector<std::pair<int, double>> sweep_n(const PlacementModel& model,
                                            std::span<const int> n_values,
                                            std::uint64_t seed) {
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 1) throw std::invalid_argument("sweep N values must be >= 1");
    if (i > 0 && n_values[i] <= n_values[i - 1]) {
      throw std::invalid_argument("sweep N values must be strictly ascending");
    }
  }
  std::vector<std::pair<int, double>> out;
  Placement prev;
  bool have_prev = false;
  for (int n : n_values) {
    PlacementModel step = model;
    step.n_max = n;
    Placement best = solve_heuristic(step, seed);
    if (have_prev) {
      Placement warm = solve_heuristic_warm(step, seed, prev);
      if (warm.objective > best.objective) best = std::move(warm);
    }
    out.emplace_back(n, best.objective);
    prev = best;
    have_prev = true;
  }
  return out;
}

}  // namespace bss
