#pragma once

#include <cstdint>
#include <optional>

#include "sltb/core.hpp"

namespace sltb {

// Pseudo-polynomial table for total completion time when every lower time is
// zero. Jobs are taken in non-increasing upper time (ties by id). For a prefix
// of j jobs with exactly k tested, the table keeps the Pareto frontier of
// (completion-time sum, testing cost) pairs; entry(C, j, k) is the cheapest
// cost reaching a sum <= C, or nullopt when none does.
class TctDpTable {
 public:
  explicit TctDpTable(const Instance& instance);

  std::size_t size() const { return order_.size(); }
  const std::vector<JobId>& order() const { return order_; }

  std::optional<Rational> entry(const Rational& bound, std::size_t prefix, std::size_t tested) const;

  // Minimum total completion time within the budget, with its tested set.
  Solution best() const;

  std::size_t frontier_points() const;

 private:
  struct Point {
    Rational tct;
    Rational cost;
    std::uint32_t pred = 0;  // index into the predecessor frontier
    bool tested = false;     // whether order_[prefix-1] is tested
  };
  const std::vector<Point>& frontier(std::size_t prefix, std::size_t tested) const {
    return table_[prefix][tested];
  }

  Rational budget_;
  std::vector<JobId> order_;
  std::vector<std::vector<std::vector<Point>>> table_;
};

// Checks the preconditions shared by the exact DP and the FPTAS.
void require_zero_lower(const Instance& instance);

Solution tct_dp_exact(const Instance& instance);

// guess * epsilon / n^2.
Rational tct_fptas_unit(const Rational& guess, const Rational& epsilon, std::size_t n);
// Smallest multiple of `unit` that is >= value.
Rational round_up_to(const Rational& value, const Rational& unit);

// Rounds upper times to multiples of guess*epsilon/n^2 for every guess of the
// largest untested upper time, solves each rounded instance exactly and keeps
// the best tested set evaluated on the original times.
Solution tct_fptas(const Instance& instance, const Rational& epsilon);

// Tests the k jobs with the largest upper time (ties by id).
Solution tct_uniform_greedy(const Instance& instance, std::size_t k);

struct EqualLowerReduction {
  Instance reduced;      // upper - v, lower 0
  Rational offset;       // v * n(n+1)/2
  Rational common_lower; // v
};

// For an instance whose lower times all equal v: completion-time sums of the
// reduced instance differ from the original by a constant offset.
EqualLowerReduction reduce_equal_low(const Instance& instance);

}  // namespace sltb
