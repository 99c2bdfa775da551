#pragma once

#include <cstdint>

#include "sltb/core.hpp"

namespace sltb {

enum class LowerModel {
  uniform,   // lower drawn uniformly from [0, upper]
  zero,      // lower = 0
  fraction,  // lower = fraction * upper
  equal,     // one common lower time for all jobs
  hidden,    // lower left unknown
};

LowerModel parse_lower_model(std::string_view text);

struct GeneratorSpec {
  std::size_t n = 6;
  std::int64_t p_max = 20;       // upper times in [1, p_max]
  bool integer_times = true;     // otherwise quarter-integers
  std::int64_t cost_max = 10;    // costs in [1, cost_max]
  bool unit_costs = false;
  LowerModel lower = LowerModel::uniform;
  Rational lower_fraction = 1;
  Rational budget_fraction = Rational(1, 2);  // of the total cost, floored for integral costs
  std::uint64_t seed = 1;
};

// Deterministic for a given spec.
Instance generate(const GeneratorSpec& spec);

}  // namespace sltb
