#pragma once

#include "sltb/core.hpp"

namespace sltb {

// Makespan minimization seen as 0/1 knapsack: testing job j gains
// value[j] = upper - lower and uses weight[j] = cost.
struct KnapsackView {
  std::vector<Rational> values;
  std::vector<Rational> weights;
  Rational capacity;
};

KnapsackView to_knapsack(const Instance& instance);

// Largest integerized capacity the exact DP accepts before raising cost_overflow.
inline constexpr std::size_t kMakespanDpCapacityLimit = std::size_t{1} << 22;

// Exact weight-indexed DP. Costs and budget are scaled by the lcm of the cost
// denominators; zero-gain jobs are never tested.
Solution makespan_dp_exact(const Instance& instance);

// Value-scaling scheme with value <= (1 + epsilon) * optimum.
Solution makespan_fptas(const Instance& instance, const Rational& epsilon);

// Tests the k jobs with the largest upper - lower (ties by id); costs and the
// budget are ignored, as for unit costs with budget k.
Solution makespan_uniform_greedy(const Instance& instance, std::size_t k);

}  // namespace sltb
