#pragma once

#include <cstdint>

#include "sltb/core.hpp"

namespace sltb {

struct OracleResult {
  JobSet best_tested;
  Rational best_value;
  Objective objective = Objective::tct;
  std::uint64_t subsets_examined = 0;  // budget-feasible subsets evaluated
};

inline constexpr std::size_t kOracleDefaultLimit = 22;

// Exhaustive search over budget-feasible tested sets, each scheduled by SPT.
// Ties go to the lexicographically smallest tested set.
OracleResult exact_solve(const Instance& instance, Objective objective,
                         std::size_t limit_n = kOracleDefaultLimit);

}  // namespace sltb
