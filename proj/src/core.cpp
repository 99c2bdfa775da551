#include "sltb/core.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace sltb {

std::string_view to_string(Objective objective) {
  return objective == Objective::tct ? "tct" : "makespan";
}

Objective parse_objective(std::string_view text) {
  if (text == "tct") return Objective::tct;
  if (text == "makespan") return Objective::makespan;
  fail(ErrorKind::invalid_argument, "unknown objective '" + std::string(text) + "'");
}

Instance::Instance(std::vector<Rational> upper, std::vector<std::optional<Rational>> lower,
                   std::vector<Rational> cost, Rational budget)
    : upper_(std::move(upper)),
      lower_(std::move(lower)),
      cost_(std::move(cost)),
      budget_(std::move(budget)) {
  const std::size_t n = upper_.size();
  require(n >= 1, ErrorKind::invalid_instance, "at least one job is required");
  require(lower_.size() == n && cost_.size() == n, ErrorKind::invalid_instance,
          "vector lengths differ");
  require(budget_ >= 0, ErrorKind::invalid_instance, "negative budget");
  for (std::size_t j = 0; j < n; ++j) {
    require(upper_[j] >= 0, ErrorKind::invalid_instance, "negative upper time");
    require(cost_[j] >= 0, ErrorKind::invalid_instance, "negative cost");
    if (lower_[j]) {
      require(*lower_[j] >= 0 && *lower_[j] <= upper_[j], ErrorKind::invalid_instance,
              "lower time outside [0, upper] for job " + std::to_string(j));
    }
  }
}

Instance Instance::with_lower(std::vector<Rational> upper, std::vector<Rational> lower,
                              std::vector<Rational> cost, Rational budget) {
  std::vector<std::optional<Rational>> low(lower.begin(), lower.end());
  return Instance(std::move(upper), std::move(low), std::move(cost), std::move(budget));
}

bool Instance::lower_known() const {
  return std::all_of(lower_.begin(), lower_.end(), [](const auto& v) { return v.has_value(); });
}

bool Instance::lower_all_zero() const {
  return std::all_of(lower_.begin(), lower_.end(),
                     [](const auto& v) { return v.has_value() && *v == 0; });
}

Rational Instance::realized(JobId j, bool tested) const {
  if (!tested) return upper_[j];
  if (!lower_[j]) fail(ErrorKind::missing_lower_time, "job " + std::to_string(j) + " is tested");
  return *lower_[j];
}

Instance Instance::with_budget(Rational budget) const {
  return Instance(upper_, lower_, cost_, std::move(budget));
}

Instance Instance::with_lowers(std::vector<Rational> lower) const {
  return with_lower(upper_, std::move(lower), cost_, budget_);
}

Instance Instance::without_lowers() const {
  return Instance(upper_, std::vector<std::optional<Rational>>(size()), cost_, budget_);
}

bool is_job_set(const JobSet& set, std::size_t n) {
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k] >= n) return false;
    if (k > 0 && set[k - 1] >= set[k]) return false;
  }
  return true;
}

JobSet normalize(JobSet set) {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  return set;
}

std::vector<bool> membership(const JobSet& set, std::size_t n) {
  std::vector<bool> in(n, false);
  for (JobId j : set) in.at(j) = true;
  return in;
}

Rational set_cost(const Instance& instance, const JobSet& set) {
  Rational total = 0;
  for (JobId j : set) total += instance.cost(j);
  return total;
}

std::vector<std::size_t> Schedule::forward_positions() const {
  std::vector<std::size_t> pos(sequence.size(), 0);
  for (std::size_t k = 0; k < sequence.size(); ++k) pos.at(sequence[k]) = k + 1;
  return pos;
}

std::size_t to_reverse(std::size_t forward, std::size_t n) {
  require(forward >= 1 && forward <= n, ErrorKind::invalid_argument, "position out of range");
  return n - forward + 1;
}

std::size_t to_forward(std::size_t reverse, std::size_t n) { return to_reverse(reverse, n); }

void validate(const Instance& instance, const Schedule& schedule) {
  const std::size_t n = instance.size();
  require(schedule.sequence.size() == n, ErrorKind::invalid_schedule, "sequence length differs");
  std::vector<bool> seen(n, false);
  for (JobId j : schedule.sequence) {
    require(j < n && !seen[j], ErrorKind::invalid_schedule, "sequence is not a permutation");
    seen[j] = true;
  }
  require(is_job_set(schedule.tested, n), ErrorKind::invalid_schedule,
          "tested set is not a sorted subset of jobs");
  require(set_cost(instance, schedule.tested) <= instance.budget(),
          ErrorKind::budget_exceeded, "tested set exceeds the budget");
  for (JobId j : schedule.tested) (void)instance.realized(j, true);
}

Rational total_completion_time(const Instance& instance, const Schedule& schedule) {
  validate(instance, schedule);
  auto in = membership(schedule.tested, instance.size());
  Rational clock = 0;
  Rational total = 0;
  for (JobId j : schedule.sequence) {
    clock += instance.realized(j, in[j]);
    total += clock;
  }
  return total;
}

Rational makespan(const Instance& instance, const Schedule& schedule) {
  validate(instance, schedule);
  auto in = membership(schedule.tested, instance.size());
  Rational total = 0;
  for (JobId j : schedule.sequence) total += instance.realized(j, in[j]);
  return total;
}

Rational evaluate(const Instance& instance, const Schedule& schedule, Objective objective) {
  return objective == Objective::tct ? total_completion_time(instance, schedule)
                                     : makespan(instance, schedule);
}

Schedule spt_schedule(const Instance& instance, const JobSet& tested) {
  const std::size_t n = instance.size();
  require(is_job_set(tested, n), ErrorKind::invalid_schedule, "tested set is malformed");
  auto in = membership(tested, n);
  std::vector<Rational> time(n);
  for (JobId j = 0; j < n; ++j) time[j] = instance.realized(j, in[j]);
  Schedule s;
  s.sequence.resize(n);
  std::iota(s.sequence.begin(), s.sequence.end(), JobId{0});
  std::stable_sort(s.sequence.begin(), s.sequence.end(),
                   [&](JobId a, JobId b) { return time[a] < time[b]; });
  s.tested = tested;
  return s;
}

Rational tested_set_value(const Instance& instance, const JobSet& tested, Objective objective) {
  return evaluate(instance, spt_schedule(instance, tested), objective);
}

}  // namespace sltb
