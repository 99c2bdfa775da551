#include <gtest/gtest.h>

#include "sltb/oracle.hpp"
#include "support/brute.hpp"

using namespace sltb;

TEST(Oracle, TwoJobExample) {
  Instance in = Instance::with_lower({3, 2}, {0, 0}, {1, 1}, 1);
  OracleResult r = exact_solve(in, Objective::tct);
  EXPECT_EQ(r.best_tested, (JobSet{0}));
  EXPECT_EQ(r.best_value, 2);
}

TEST(Oracle, ZeroBudgetLeavesAllUntested) {
  Instance in = Instance::with_lower({4, 1, 3}, {0, 0, 0}, {1, 1, 1}, 0);
  OracleResult r = exact_solve(in, Objective::tct);
  EXPECT_TRUE(r.best_tested.empty());
  EXPECT_EQ(r.best_value, brute::tct_sorted({4, 1, 3}));
  EXPECT_EQ(r.subsets_examined, 1u);
}

TEST(Oracle, UnitJobsHalfBudget) {
  // n(n+2)/8 at n = 4.
  Instance in = Instance::with_lower({1, 1, 1, 1}, {0, 0, 0, 0}, {1, 1, 1, 1}, 2);
  EXPECT_EQ(exact_solve(in, Objective::tct).best_value, 3);
  EXPECT_EQ(exact_solve(in, Objective::tct).best_tested, (JobSet{0, 1}));
}

TEST(Oracle, Guards) {
  Instance hidden = Instance::with_lower({1, 2}, {0, 0}, {1, 1}, 1).without_lowers();
  try {
    exact_solve(hidden, Objective::tct);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::missing_lower_time);
  }
  Instance in = Instance::with_lower({1, 2, 3}, {0, 0, 0}, {1, 1, 1}, 1);
  try {
    exact_solve(in, Objective::tct, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::instance_too_large);
  }
}

TEST(Property, OracleMatchesBruteForce) {
  brute::Gen gen(21);
  for (int round = 0; round < 80; ++round) {
    std::size_t n = static_cast<std::size_t>(gen.pick(1, 8));
    Instance in = gen.instance(n, 12, 6, brute::Gen::Low::any, round % 3 == 0);
    brute::Raw raw = brute::raw_of(in);
    for (auto obj : {Objective::tct, Objective::makespan}) {
      auto goal = obj == Objective::tct ? brute::Goal::tct : brute::Goal::makespan;
      OracleResult r = exact_solve(in, obj);
      EXPECT_EQ(r.best_value, brute::optimum(raw, goal));
      EXPECT_LE(set_cost(in, r.best_tested), in.budget());
      EXPECT_EQ(tested_set_value(in, r.best_tested, obj), r.best_value);
    }
  }
}

TEST(Property, BudgetMonotoneAndLowerDominance) {
  brute::Gen gen(22);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = static_cast<std::size_t>(gen.pick(1, 7));
    Instance in = gen.instance(n, 10, 5, brute::Gen::Low::any);
    Rational prev = exact_solve(in.with_budget(0), Objective::tct).best_value;
    for (int b = 1; b <= 12; ++b) {
      Rational v = exact_solve(in.with_budget(b), Objective::tct).best_value;
      EXPECT_LE(v, prev);
      prev = v;
    }
    std::vector<Rational> smaller;
    for (std::size_t j = 0; j < n; ++j) smaller.push_back(*in.lower(j) / 2);
    EXPECT_LE(exact_solve(in.with_lowers(smaller), Objective::tct).best_value,
              exact_solve(in, Objective::tct).best_value);
    Instance flat = in.with_lowers(in.uppers());
    EXPECT_EQ(exact_solve(flat, Objective::tct).best_value, brute::tct_sorted(in.uppers()));
  }
}
