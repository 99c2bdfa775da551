#pragma once

// Reference solvers for tests. They work on plain vectors and use nothing
// from the library except the Rational type, so they can serve as ground truth.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "sltb/core.hpp"

namespace brute {

using sltb::Rational;

struct Raw {
  std::vector<Rational> up;
  std::vector<Rational> low;
  std::vector<Rational> cost;
  Rational budget;
};

inline Raw raw_of(const sltb::Instance& in) {
  Raw r;
  for (std::size_t j = 0; j < in.size(); ++j) {
    r.up.push_back(in.upper(j));
    r.low.push_back(in.lower(j).value_or(in.upper(j)));
    r.cost.push_back(in.cost(j));
  }
  r.budget = in.budget();
  return r;
}

inline std::vector<Rational> realized(const Raw& r, std::uint32_t mask) {
  std::vector<Rational> t;
  for (std::size_t j = 0; j < r.up.size(); ++j) t.push_back((mask >> j) & 1u ? r.low[j] : r.up[j]);
  return t;
}

// Completion-time sum when jobs run in the given order.
inline Rational tct_in_order(const std::vector<Rational>& times, const std::vector<std::size_t>& order) {
  Rational clock = 0, sum = 0;
  for (std::size_t j : order) {
    clock += times[j];
    sum += clock;
  }
  return sum;
}

// Minimum over all n! orders.
inline Rational tct_all_orders(const std::vector<Rational>& times) {
  std::vector<std::size_t> order(times.size());
  std::iota(order.begin(), order.end(), 0);
  std::optional<Rational> best;
  do {
    Rational v = tct_in_order(times, order);
    if (!best || v < *best) best = v;
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

// Ascending sort, then weights n, n-1, ..., 1.
inline Rational tct_sorted(std::vector<Rational> times) {
  std::sort(times.begin(), times.end());
  Rational sum = 0;
  for (std::size_t i = 0; i < times.size(); ++i) sum += Rational(times.size() - i) * times[i];
  return sum;
}

inline Rational total(const std::vector<Rational>& v) {
  return std::accumulate(v.begin(), v.end(), Rational(0));
}

inline Rational mask_cost(const Raw& r, std::uint32_t mask) {
  Rational c = 0;
  for (std::size_t j = 0; j < r.up.size(); ++j)
    if ((mask >> j) & 1u) c += r.cost[j];
  return c;
}

enum class Goal { tct, makespan };

// Optimum over every budget-feasible mask. Orders are enumerated when
// `permutations` is set, otherwise sorted.
inline Rational optimum(const Raw& r, Goal goal, bool permutations = false) {
  const std::uint32_t n = static_cast<std::uint32_t>(r.up.size());
  std::optional<Rational> best;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (mask_cost(r, mask) > r.budget) continue;
    auto t = realized(r, mask);
    Rational v = goal == Goal::makespan ? total(t) : permutations ? tct_all_orders(t) : tct_sorted(t);
    if (!best || v < *best) best = v;
  }
  return *best;
}

inline Rational value_of_set(const Raw& r, const sltb::JobSet& set, Goal goal) {
  std::uint32_t mask = 0;
  for (auto j : set) mask |= 1u << j;
  auto t = realized(r, mask);
  return goal == Goal::makespan ? total(t) : tct_sorted(t);
}

// Best knapsack profit by subset enumeration.
inline Rational knapsack_best(const std::vector<Rational>& values, const std::vector<Rational>& weights,
                              const Rational& capacity) {
  Rational best = 0;
  const std::uint32_t n = static_cast<std::uint32_t>(values.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    Rational v = 0, w = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) {
        v += values[i];
        w += weights[i];
      }
    if (w <= capacity && v > best) best = v;
  }
  return best;
}

inline bool equal_split(const std::vector<int>& items) {
  int sum = std::accumulate(items.begin(), items.end(), 0);
  if (sum % 2) return false;
  const std::uint32_t n = static_cast<std::uint32_t>(items.size());
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    int s = 0;
    for (std::uint32_t i = 0; i < n; ++i)
      if ((mask >> i) & 1u) s += items[i];
    if (2 * s == sum) return true;
  }
  return false;
}

// Hand-rolled instance generator, separate from the library's.
struct Gen {
  std::mt19937_64 rng;
  explicit Gen(std::uint64_t seed) : rng(seed) {}

  long pick(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

  enum class Low { any, zero, equal, none };

  sltb::Instance instance(std::size_t n, long p_max, long c_max, Low low, bool quarters = false,
                          bool unit_costs = false) {
    const long g = quarters ? 4 : 1;
    std::vector<Rational> up, cost;
    std::vector<std::optional<Rational>> lo(n);
    Rational sum = 0;
    for (std::size_t j = 0; j < n; ++j) {
      up.emplace_back(pick(1, p_max * g), g);
      cost.emplace_back(unit_costs ? 1 : pick(1, c_max));
      sum += cost.back();
    }
    Rational common = Rational(pick(0, p_max * g), g);
    for (std::size_t j = 0; j < n; ++j) common = std::min(common, up[j]);
    for (std::size_t j = 0; j < n; ++j) {
      switch (low) {
        case Low::any: lo[j] = up[j] * Rational(pick(0, 4), 4); break;
        case Low::zero: lo[j] = Rational(0); break;
        case Low::equal: lo[j] = common; break;
        case Low::none: break;
      }
    }
    Rational budget = Rational(pick(0, static_cast<long>(sum.convert_to<double>())));
    return sltb::Instance(up, lo, cost, budget);
  }
};

}  // namespace brute
