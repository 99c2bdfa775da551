#include "sltb/oblivious.hpp"

#include <algorithm>
#include <string>

#include "sltb/makespan.hpp"
#include "sltb/oracle.hpp"
#include "sltb/tct_dp.hpp"

namespace sltb {

namespace {

// Above this table size the FPTAS replaces the exact DP.
constexpr std::size_t kExactDpLimit = 200000;

bool small_integral(const Instance& instance) {
  Rational largest = 0;
  for (const auto& p : instance.uppers()) {
    if (!is_integer(p)) return false;
    largest = std::max(largest, p);
  }
  const std::size_t n = instance.size();
  return largest * Rational(n * n) <= Rational(kExactDpLimit);
}

Solution fptas_optimum(const Instance& revealed, Objective objective, const Rational& epsilon) {
  if (objective == Objective::makespan) return makespan_fptas(revealed, epsilon);
  const std::size_t n = revealed.size();
  bool zero_or_full = true;
  for (JobId j = 0; j < n; ++j) {
    const Rational& low = *revealed.lower(j);
    zero_or_full = zero_or_full && (low == 0 || low == revealed.upper(j));
  }
  if (zero_or_full) {
    // Testing a job whose lower time equals its upper time never helps, so
    // make it unaffordable and drop its lower time to zero.
    std::vector<Rational> cost = revealed.costs();
    for (JobId j = 0; j < n; ++j) {
      if (*revealed.lower(j) != 0) cost[j] = revealed.budget() + 1;
    }
    Instance zeroed = Instance::with_lower(revealed.uppers(), std::vector<Rational>(n, Rational(0)),
                                           cost, revealed.budget());
    Solution s = tct_fptas(zeroed, epsilon);
    s.value = tested_set_value(revealed, s.tested, objective);
    return s;
  }
  EqualLowerReduction red = reduce_equal_low(revealed);
  Solution s = tct_fptas(red.reduced, epsilon);
  s.value += red.offset;
  return s;
}

}  // namespace

std::string_view to_string(AdversaryKind kind) {
  return kind == AdversaryKind::worst_case ? "worst_case" : "fixed_vector";
}

Instance auxiliary_instance(const VisibleInstance& visible) {
  const Instance& v = visible.instance();
  return Instance::with_lower(v.uppers(), std::vector<Rational>(v.size(), Rational(0)), v.costs(),
                              v.budget());
}

Solution oblivious_choose(const VisibleInstance& visible, Objective objective, const Rational& epsilon) {
  require(epsilon > 0, ErrorKind::invalid_epsilon, "epsilon must be positive");
  Instance aux = auxiliary_instance(visible);
  if (objective == Objective::makespan) return makespan_fptas(aux, epsilon);
  return small_integral(aux) ? tct_dp_exact(aux) : tct_fptas(aux, epsilon);
}

Instance adversary_worst_case(const VisibleInstance& visible, const JobSet& alg_tested) {
  const Instance& v = visible.instance();
  auto in = membership(alg_tested, v.size());
  std::vector<Rational> lower(v.size(), Rational(0));
  for (JobId j = 0; j < v.size(); ++j) {
    if (in[j]) lower[j] = v.upper(j);
  }
  return v.with_lowers(lower);
}

SimulationReport simulate(const VisibleInstance& visible, Objective objective, const Rational& epsilon,
                          const SimulationOptions& options) {
  SimulationReport report;
  report.objective = objective;
  report.adversary = options.adversary;
  Solution alg = oblivious_choose(visible, objective, epsilon);
  report.alg_tested = alg.tested;

  std::optional<Instance> revealed;
  if (options.adversary == AdversaryKind::worst_case) {
    revealed = adversary_worst_case(visible, alg.tested);
  } else {
    require(options.hidden.has_value() && options.hidden->size() == visible.size(),
            ErrorKind::invalid_argument, "fixed adversary needs one lower time per job");
    revealed = visible.instance().with_lowers(*options.hidden);
  }
  report.alg_value = tested_set_value(*revealed, alg.tested, objective);

  bool use_oracle = options.opt_mode == OptMode::oracle;
  if (use_oracle && revealed->size() > kOracleDefaultLimit) {
    require(options.allow_fptas_fallback, ErrorKind::instance_too_large,
            "oracle limit exceeded and no fallback allowed");
    use_oracle = false;
  }
  if (use_oracle) {
    OracleResult opt = exact_solve(*revealed, objective);
    report.opt_tested = opt.best_tested;
    report.opt_value = opt.best_value;
  } else {
    Solution opt = fptas_optimum(*revealed, objective, epsilon);
    report.opt_tested = opt.tested;
    report.opt_value = opt.value;
  }
  if (report.opt_value != 0) report.ratio = report.alg_value / report.opt_value;
  return report;
}

Rational oblivious_bound(Objective objective, const Rational& epsilon) {
  return objective == Objective::tct ? Rational(4) + 2 * epsilon : Rational(2) + epsilon;
}

VisibleInstance hard_instance(std::size_t n) {
  require(n >= 2 && n % 2 == 0, ErrorKind::invalid_argument, "the hard instance needs an even n >= 2");
  std::vector<Rational> ones(n, Rational(1));
  Instance inst(ones, std::vector<std::optional<Rational>>(n), ones, Rational(n / 2));
  return VisibleInstance(inst);
}

}  // namespace sltb
