#include "sltb/oracle.hpp"

#include <algorithm>
#include <string>

namespace sltb {

namespace {

struct Search {
  const Instance& instance;
  Objective objective;
  std::vector<bool> chosen;
  std::vector<Rational> times;
  OracleResult result;
  bool have_best = false;

  Rational value() {
    const std::size_t n = instance.size();
    for (JobId j = 0; j < n; ++j) times[j] = chosen[j] ? *instance.lower(j) : instance.upper(j);
    if (objective == Objective::makespan) {
      Rational total = 0;
      for (const auto& t : times) total += t;
      return total;
    }
    std::sort(times.begin(), times.end());
    Rational total = 0;
    for (std::size_t k = 0; k < n; ++k) total += times[k] * Rational(n - k);
    return total;
  }

  JobSet current() const {
    JobSet s;
    for (JobId j = 0; j < chosen.size(); ++j) {
      if (chosen[j]) s.push_back(j);
    }
    return s;
  }

  void visit(JobId next, const Rational& spent) {
    if (next == instance.size()) {
      ++result.subsets_examined;
      Rational v = value();
      if (!have_best || v < result.best_value ||
          (v == result.best_value && current() < result.best_tested)) {
        result.best_value = v;
        result.best_tested = current();
        have_best = true;
      }
      return;
    }
    Rational with = spent + instance.cost(next);
    if (with <= instance.budget()) {
      chosen[next] = true;
      visit(next + 1, with);
      chosen[next] = false;
    }
    visit(next + 1, spent);
  }
};

}  // namespace

OracleResult exact_solve(const Instance& instance, Objective objective, std::size_t limit_n) {
  require(instance.size() <= limit_n, ErrorKind::instance_too_large,
          "n=" + std::to_string(instance.size()) + " exceeds oracle limit " +
              std::to_string(limit_n));
  require(instance.lower_known(), ErrorKind::missing_lower_time,
          "the oracle needs every lower time");
  Search search{instance, objective, std::vector<bool>(instance.size(), false),
                std::vector<Rational>(instance.size()), {}, false};
  search.result.objective = objective;
  search.visit(0, Rational(0));
  return search.result;
}

}  // namespace sltb
