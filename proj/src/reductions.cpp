#include "sltb/reductions.hpp"

#include <cstdint>
#include <string>

#include "sltb/oracle.hpp"

namespace sltb {

PartitionReduction partition_to_sltb(const std::vector<Rational>& items) {
  const std::size_t n = items.size();
  require(n >= 1, ErrorKind::invalid_argument, "at least one item is required");
  Rational total = 0;
  for (const auto& u : items) {
    require(u >= 0, ErrorKind::invalid_argument, "items must be nonnegative");
    total += u;
  }
  const Rational half = total / 2;
  for (std::size_t j = 0; j < n; ++j) {
    require(items[j] <= half, ErrorKind::invalid_argument,
            "item " + std::to_string(j + 1) + " exceeds half of the total");
  }

  PartitionReduction red{items, std::vector<Rational>(n), std::vector<Rational>(n),
                         Instance({Rational(0)}, {Rational(0)}, {Rational(0)}, Rational(0)), Rational(0)};
  Rational weighted_tail = 0;  // sum over i > j of i * a_i
  Rational b_tail = 0;         // sum over i > j of b_i
  for (std::size_t idx = n; idx-- > 0;) {
    const Rational j(idx + 1);
    red.a[idx] = (weighted_tail + half + 1 - items[idx]) / (j + 1);
    red.b[idx] = b_tail + half + 1;
    weighted_tail += j * red.a[idx];
    b_tail += red.b[idx];
  }
  std::vector<Rational> upper;
  std::vector<Rational> cost;
  for (std::size_t idx = 0; idx < n; ++idx) {
    const Rational j(idx + 1);
    upper.push_back(red.a[idx] + items[idx] / j);
    upper.push_back(red.a[idx]);
    cost.push_back(red.b[idx] + items[idx]);
    cost.push_back(red.b[idx]);
  }
  red.instance = Instance::with_lower(upper, std::vector<Rational>(2 * n, Rational(0)), cost,
                                      b_tail + half);
  red.target = weighted_tail + half;
  return red;
}

bool has_equal_split(const std::vector<Rational>& items) {
  require(items.size() < 63, ErrorKind::instance_too_large, "too many items to enumerate");
  Rational total = 0;
  for (const auto& u : items) total += u;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << items.size()); ++mask) {
    Rational sum = 0;
    for (std::size_t j = 0; j < items.size(); ++j) {
      if (mask >> j & 1) sum += items[j];
    }
    if (2 * sum == total) return true;
  }
  return false;
}

PartitionCheck verify_partition_reduction(const PartitionReduction& reduction) {
  require(reduction.items.size() <= kPartitionVerifyLimit, ErrorKind::instance_too_large,
          "verification is limited to six items");
  PartitionCheck check;
  check.split_exists = has_equal_split(reduction.items);
  OracleResult opt = exact_solve(reduction.instance, Objective::tct);
  check.optimum = opt.best_value;
  check.optimal_tested = opt.best_tested;
  check.target = reduction.target;
  check.consistent = check.split_exists == (check.optimum <= check.target);
  return check;
}

Instance knapsack_to_sltb(const KnapsackView& knapsack) {
  require(knapsack.values.size() == knapsack.weights.size(), ErrorKind::invalid_argument,
          "values and weights differ in length");
  return Instance::with_lower(knapsack.values,
                              std::vector<Rational>(knapsack.values.size(), Rational(0)),
                              knapsack.weights, knapsack.capacity);
}

KnapsackView sltb_to_knapsack(const Instance& instance) { return to_knapsack(instance); }

}  // namespace sltb
