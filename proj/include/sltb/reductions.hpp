#pragma once

#include "sltb/core.hpp"
#include "sltb/makespan.hpp"

namespace sltb {

// Two jobs per Partition item, both with lower time 0. Item j (1-based) yields
// jobs 2j-2 and 2j-1 with upper times (a_j + u_j / j, a_j) and costs
// (b_j + u_j, b_j); a and b come from backward recursions over j.
struct PartitionReduction {
  std::vector<Rational> items;
  std::vector<Rational> a;
  std::vector<Rational> b;
  Instance instance;
  Rational target;  // optimum <= target  <=>  items split into equal halves
};

// Requires every item to be nonnegative and at most half the total.
PartitionReduction partition_to_sltb(const std::vector<Rational>& items);

bool has_equal_split(const std::vector<Rational>& items);

struct PartitionCheck {
  bool split_exists = false;
  Rational optimum;
  Rational target;
  JobSet optimal_tested;
  bool consistent = false;  // split_exists == (optimum <= target)
};

inline constexpr std::size_t kPartitionVerifyLimit = 6;

// Solves the reduced instance exactly; at most six items.
PartitionCheck verify_partition_reduction(const PartitionReduction& reduction);

// Items become jobs with upper = value, lower = 0, cost = weight.
Instance knapsack_to_sltb(const KnapsackView& knapsack);
KnapsackView sltb_to_knapsack(const Instance& instance);

}  // namespace sltb
