#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sltb/error.hpp"
#include "sltb/rational.hpp"

namespace sltb {

using JobId = std::size_t;  // 0-based inside the library, 1-based on the CLI

// Sorted, duplicate-free list of job ids. Ordering of two sets is
// lexicographic on the sorted lists.
using JobSet = std::vector<JobId>;

enum class Objective { tct, makespan };

std::string_view to_string(Objective objective);
Objective parse_objective(std::string_view text);

class Instance {
 public:
  Instance(std::vector<Rational> upper, std::vector<std::optional<Rational>> lower,
           std::vector<Rational> cost, Rational budget);

  // All lower times known.
  static Instance with_lower(std::vector<Rational> upper, std::vector<Rational> lower,
                             std::vector<Rational> cost, Rational budget);

  std::size_t size() const { return upper_.size(); }
  const Rational& upper(JobId j) const { return upper_[j]; }
  const std::optional<Rational>& lower(JobId j) const { return lower_[j]; }
  const Rational& cost(JobId j) const { return cost_[j]; }
  const Rational& budget() const { return budget_; }

  const std::vector<Rational>& uppers() const { return upper_; }
  const std::vector<std::optional<Rational>>& lowers() const { return lower_; }
  const std::vector<Rational>& costs() const { return cost_; }

  bool lower_known() const;
  bool lower_all_zero() const;

  // Realized processing time; throws missing_lower_time for a tested job
  // whose lower time is unknown.
  Rational realized(JobId j, bool tested) const;

  Instance with_budget(Rational budget) const;
  Instance with_lowers(std::vector<Rational> lower) const;
  Instance without_lowers() const;

 private:
  std::vector<Rational> upper_;
  std::vector<std::optional<Rational>> lower_;
  std::vector<Rational> cost_;
  Rational budget_;
};

bool is_job_set(const JobSet& set, std::size_t n);
JobSet normalize(JobSet set);
std::vector<bool> membership(const JobSet& set, std::size_t n);
Rational set_cost(const Instance& instance, const JobSet& set);

// A processing sequence plus the set of tested jobs.
struct Schedule {
  std::vector<JobId> sequence;  // sequence[k] runs at forward position k+1
  JobSet tested;

  // Forward position (1-based) of every job.
  std::vector<std::size_t> forward_positions() const;
};

// A tested set together with the objective value of its SPT schedule.
struct Solution {
  JobSet tested;
  Rational value;
};

enum class PositionConvention { forward, reverse };

// Forward position k corresponds to reverse position n-k+1 and vice versa.
std::size_t to_reverse(std::size_t forward, std::size_t n);
std::size_t to_forward(std::size_t reverse, std::size_t n);

// Throws invalid_schedule / budget_exceeded / missing_lower_time.
void validate(const Instance& instance, const Schedule& schedule);

Rational total_completion_time(const Instance& instance, const Schedule& schedule);
Rational makespan(const Instance& instance, const Schedule& schedule);
Rational evaluate(const Instance& instance, const Schedule& schedule, Objective objective);

// Ascending realized time, ties by job id.
Schedule spt_schedule(const Instance& instance, const JobSet& tested);

// Objective value of the best schedule for a fixed tested set.
Rational tested_set_value(const Instance& instance, const JobSet& tested, Objective objective);

}  // namespace sltb
