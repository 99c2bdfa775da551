#include "sltb/generator.hpp"

#include <random>
#include <string>

namespace sltb {

LowerModel parse_lower_model(std::string_view text) {
  if (text == "uniform") return LowerModel::uniform;
  if (text == "zero") return LowerModel::zero;
  if (text == "fraction") return LowerModel::fraction;
  if (text == "equal") return LowerModel::equal;
  if (text == "hidden") return LowerModel::hidden;
  fail(ErrorKind::invalid_argument, "unknown lower-time model '" + std::string(text) + "'");
}

Instance generate(const GeneratorSpec& spec) {
  require(spec.n >= 1 && spec.p_max >= 1 && spec.cost_max >= 1, ErrorKind::invalid_argument,
          "generator needs n, p_max and cost_max of at least 1");
  require(spec.budget_fraction >= 0, ErrorKind::invalid_argument, "negative budget fraction");
  require(spec.lower_fraction >= 0 && spec.lower_fraction <= 1, ErrorKind::invalid_argument,
          "lower fraction must lie in [0, 1]");
  std::mt19937_64 rng(spec.seed);
  const std::int64_t grain = spec.integer_times ? 1 : 4;
  auto draw = [&](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };

  std::vector<Rational> upper;
  for (std::size_t j = 0; j < spec.n; ++j) {
    upper.push_back(Rational(draw(grain, spec.p_max * grain), grain));
  }
  std::vector<Rational> cost;
  Rational total_cost = 0;
  for (std::size_t j = 0; j < spec.n; ++j) {
    cost.push_back(spec.unit_costs ? Rational(1) : Rational(draw(1, spec.cost_max)));
    total_cost += cost.back();
  }

  std::vector<std::optional<Rational>> lower(spec.n);
  switch (spec.lower) {
    case LowerModel::uniform:
      for (std::size_t j = 0; j < spec.n; ++j) {
        std::int64_t top = floor_of(upper[j] * grain).convert_to<std::int64_t>();
        lower[j] = Rational(draw(0, top), grain);
      }
      break;
    case LowerModel::zero:
      for (auto& l : lower) l = Rational(0);
      break;
    case LowerModel::fraction:
      for (std::size_t j = 0; j < spec.n; ++j) lower[j] = spec.lower_fraction * upper[j];
      break;
    case LowerModel::equal: {
      Rational smallest = upper[0];
      for (const auto& p : upper) smallest = std::min(smallest, p);
      std::int64_t top = floor_of(smallest * grain).convert_to<std::int64_t>();
      Rational common(draw(0, top), grain);
      for (auto& l : lower) l = common;
      break;
    }
    case LowerModel::hidden:
      break;
  }
  Rational budget = spec.budget_fraction * total_cost;
  budget = Rational(floor_of(budget));
  return Instance(upper, lower, cost, budget);
}

}  // namespace sltb
