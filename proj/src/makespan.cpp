#include "sltb/makespan.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace sltb {

namespace {

Rational lower_sum(const Instance& instance) {
  Rational total = 0;
  for (JobId j = 0; j < instance.size(); ++j) total += *instance.lower(j);
  return total;
}

Rational makespan_of(const Instance& instance, const JobSet& tested) {
  auto in = membership(tested, instance.size());
  Rational total = 0;
  for (JobId j = 0; j < instance.size(); ++j) total += instance.realized(j, in[j]);
  return total;
}

bool better(const Solution& a, const Solution& b) {
  return a.value < b.value || (a.value == b.value && a.tested < b.tested);
}

}  // namespace

KnapsackView to_knapsack(const Instance& instance) {
  require(instance.lower_known(), ErrorKind::missing_lower_time, "knapsack view needs lower times");
  KnapsackView view;
  for (JobId j = 0; j < instance.size(); ++j) {
    view.values.push_back(instance.upper(j) - *instance.lower(j));
    view.weights.push_back(instance.cost(j));
  }
  view.capacity = instance.budget();
  return view;
}

Solution makespan_dp_exact(const Instance& instance) {
  KnapsackView view = to_knapsack(instance);
  const std::size_t n = instance.size();
  Integer scale = denominator_lcm(view.weights);
  Integer cap = floor_of(view.capacity * Rational(scale));

  std::vector<std::size_t> weight(n, 0);
  std::vector<bool> usable(n, false);
  Integer total_weight = 0;
  for (JobId j = 0; j < n; ++j) {
    Integer w = numerator(view.weights[j] * Rational(scale));
    if (view.values[j] > 0 && w <= cap) {
      usable[j] = true;
      total_weight += w;
      require(w <= Integer(kMakespanDpCapacityLimit), ErrorKind::cost_overflow,
              "integerized cost too large for the exact DP");
      weight[j] = w.convert_to<std::size_t>();
    }
  }
  if (total_weight < cap) cap = total_weight;
  require(cap <= Integer(kMakespanDpCapacityLimit), ErrorKind::cost_overflow,
          "integerized budget " + cap.str() + " too large for the exact DP");
  const std::size_t W = cap.convert_to<std::size_t>();

  std::vector<Rational> best(W + 1, Rational(0));
  std::vector<std::vector<bool>> take(n, std::vector<bool>(W + 1, false));
  for (JobId j = 0; j < n; ++j) {
    if (!usable[j]) continue;
    for (std::size_t w = W + 1; w-- > weight[j];) {
      Rational cand = best[w - weight[j]] + view.values[j];
      if (cand > best[w]) {
        best[w] = cand;
        take[j][w] = true;
      }
    }
  }
  JobSet tested;
  std::size_t w = W;
  for (JobId j = n; j-- > 0;) {
    if (take[j][w]) {
      tested.push_back(j);
      w -= weight[j];
    }
  }
  std::reverse(tested.begin(), tested.end());
  Solution s{tested, makespan_of(instance, tested)};
  return s;
}

Solution makespan_fptas(const Instance& instance, const Rational& epsilon) {
  require(epsilon > 0, ErrorKind::invalid_epsilon, "epsilon must be positive");
  KnapsackView view = to_knapsack(instance);
  const std::size_t n = instance.size();
  const Rational base = lower_sum(instance);

  // Work on the untested side: makespan = sum(lower) + value(untested), and the
  // untested set must carry cost at least sum(cost) - budget.
  Rational total_cost = 0;
  for (const auto& c : view.weights) total_cost += c;

  std::optional<Solution> best;
  auto offer = [&](JobSet tested) {
    Solution s{tested, base};
    auto in = membership(tested, n);
    for (JobId j = 0; j < n; ++j) {
      if (!in[j]) s.value += view.values[j];
    }
    if (!best || better(s, *best)) best = std::move(s);
  };

  {
    JobSet tested;
    for (JobId j = 0; j < n; ++j) {
      if (view.values[j] > 0) tested.push_back(j);
    }
    if (set_cost(instance, tested) <= view.capacity) offer(tested);
  }

  std::set<Rational> guesses;
  for (const auto& v : view.values) {
    if (v > 0) guesses.insert(v);
  }
  for (const Rational& guess : guesses) {
    // guess = largest gain left untested
    JobSet forced;
    std::vector<JobId> free;
    for (JobId j = 0; j < n; ++j) {
      if (view.values[j] > guess) {
        forced.push_back(j);
      } else {
        free.push_back(j);
      }
    }
    Rational forced_cost = set_cost(instance, forced);
    if (forced_cost > view.capacity) continue;
    Rational free_cost = 0;
    for (JobId j : free) free_cost += view.weights[j];
    Rational need = free_cost - (view.capacity - forced_cost);

    const Rational unit = epsilon * guess / Rational(n);
    std::vector<std::size_t> scaled(free.size());
    std::size_t span = 0;
    for (std::size_t k = 0; k < free.size(); ++k) {
      scaled[k] = floor_of(view.values[free[k]] / unit).convert_to<std::size_t>();
      span += scaled[k];
    }
    // most[s] = largest cost of an untested subset with scaled gain exactly s
    std::vector<std::optional<Rational>> most(span + 1);
    most[0] = Rational(0);
    std::vector<std::vector<bool>> take(free.size(), std::vector<bool>(span + 1, false));
    for (std::size_t k = 0; k < free.size(); ++k) {
      for (std::size_t s = span + 1; s-- > scaled[k];) {
        const auto& from = most[s - scaled[k]];
        if (!from) continue;
        Rational cand = *from + view.weights[free[k]];
        if (!most[s] || cand > *most[s]) {
          most[s] = cand;
          take[k][s] = true;
        }
      }
    }
    for (std::size_t s = 0; s <= span; ++s) {
      if (!most[s] || *most[s] < need) continue;
      std::vector<bool> untested(n, false);
      std::size_t at = s;
      for (std::size_t k = free.size(); k-- > 0;) {
        if (take[k][at]) {
          untested[free[k]] = true;
          at -= scaled[k];
        }
      }
      JobSet tested;
      for (JobId j = 0; j < n; ++j) {
        if (!untested[j]) tested.push_back(j);
      }
      offer(tested);
      break;
    }
  }
  require(best.has_value(), ErrorKind::invariant_breach, "no feasible tested set found");
  return *best;
}

Solution makespan_uniform_greedy(const Instance& instance, std::size_t k) {
  KnapsackView view = to_knapsack(instance);
  const std::size_t n = instance.size();
  std::vector<JobId> order(n);
  std::iota(order.begin(), order.end(), JobId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](JobId a, JobId b) { return view.values[a] > view.values[b]; });
  order.resize(std::min(k, n));
  JobSet tested = normalize(order);
  return Solution{tested, makespan_of(instance, tested)};
}

}  // namespace sltb
