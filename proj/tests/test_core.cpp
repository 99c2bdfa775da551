#include <gtest/gtest.h>

#include <numeric>

#include "sltb/core.hpp"
#include "support/brute.hpp"

using namespace sltb;

namespace {

Instance untested_only(std::vector<Rational> up) {
  std::vector<Rational> cost(up.size(), Rational(1));
  std::vector<Rational> low(up.size(), Rational(0));
  return Instance::with_lower(up, low, cost, 0);
}

Schedule in_order(std::vector<JobId> seq, JobSet tested = {}) { return Schedule{std::move(seq), tested}; }

}  // namespace

TEST(Rational, ParsesAndFormats) {
  EXPECT_EQ(parse_rational("3"), Rational(3));
  EXPECT_EQ(parse_rational("-6/4"), Rational(-3, 2));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(format_rational(Rational(4)), "4/1");
  EXPECT_EQ(format_rational(Rational(2, 6)), "1/3");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_EQ(floor_of(Rational(-1, 2)), -1);
  EXPECT_EQ(ceil_of(Rational(7, 2)), 4);
  EXPECT_EQ(denominator_lcm({Rational(1, 4), Rational(1, 6), Rational(2)}), 12);
}

TEST(Instance, RejectsBrokenInvariants) {
  EXPECT_THROW(Instance::with_lower({2}, {3}, {1}, 1), Error);
  EXPECT_THROW(Instance::with_lower({2}, {-1}, {1}, 1), Error);
  EXPECT_THROW(Instance::with_lower({2}, {1}, {-1}, 1), Error);
  EXPECT_THROW(Instance::with_lower({2}, {1}, {1}, -1), Error);
  EXPECT_THROW(Instance({}, {}, {}, 0), Error);
  try {
    Instance::with_lower({2}, {3}, {1}, 1);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::invalid_instance);
  }
}

TEST(Evaluation, SingleUntestedJob) {
  Instance in = untested_only({5});
  EXPECT_EQ(total_completion_time(in, in_order({0})), 5);
  EXPECT_EQ(makespan(in, in_order({0})), 5);
}

TEST(Evaluation, SptOfThreeJobs) {
  Instance in = untested_only({3, 1, 2});
  Schedule s = spt_schedule(in, {});
  EXPECT_EQ(s.sequence, (std::vector<JobId>{1, 2, 0}));
  EXPECT_EQ(total_completion_time(in, s), 10);
  EXPECT_EQ(brute::tct_all_orders({3, 1, 2}), 10);
}

TEST(Evaluation, UnitJobsWithTwoTested) {
  Instance in = Instance::with_lower({1, 1, 1, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, 2);
  Schedule s = spt_schedule(in, {0, 2});
  EXPECT_EQ(total_completion_time(in, s), 10);
  EXPECT_EQ(makespan(in, s), 4);
}

TEST(Evaluation, MakespanWithOneTest) {
  Instance in = Instance::with_lower({10, 7}, {2, 1}, {5, 4}, 5);
  EXPECT_EQ(makespan(in, spt_schedule(in, {0})), 9);
}

TEST(Evaluation, TestedJobGoesFirst) {
  Instance in = Instance::with_lower({3, 2}, {0, 0}, {1, 1}, 1);
  Schedule s = spt_schedule(in, {0});
  EXPECT_EQ(s.sequence.front(), 0u);
  EXPECT_EQ(total_completion_time(in, s), 2);
}

TEST(Evaluation, TiesKeepIdOrder) {
  Instance in = untested_only({2, 2, 2, 2});
  EXPECT_EQ(spt_schedule(in, {}).sequence, (std::vector<JobId>{0, 1, 2, 3}));
}

TEST(Validation, ReportsEachFault) {
  Instance in = Instance::with_lower({3, 2}, {0, 0}, {1, 1}, 1);
  auto kind_of = [&](const Schedule& s) {
    try {
      validate(in, s);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::parse_error;  // sentinel: nothing thrown
  };
  EXPECT_EQ(kind_of(in_order({0, 0})), ErrorKind::invalid_schedule);
  EXPECT_EQ(kind_of(in_order({0})), ErrorKind::invalid_schedule);
  EXPECT_EQ(kind_of(in_order({0, 1}, {0, 1})), ErrorKind::budget_exceeded);
  Instance hidden = in.without_lowers();
  EXPECT_EQ(kind_of(in_order({0, 1}, {0})), ErrorKind::parse_error);
  try {
    total_completion_time(hidden, in_order({0, 1}, {0}));
    FAIL() << "expected missing lower time";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::missing_lower_time);
  }
}

TEST(Positions, ConversionRoundTrips) {
  for (std::size_t n = 1; n <= 9; ++n)
    for (std::size_t k = 1; k <= n; ++k) {
      EXPECT_EQ(to_forward(to_reverse(k, n), n), k);
      EXPECT_EQ(to_reverse(k, n), n - k + 1);
    }
}

TEST(Property, SptBeatsEveryOrder) {
  brute::Gen gen(11);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = static_cast<std::size_t>(gen.pick(1, 6));
    Instance in = gen.instance(n, 9, 5, brute::Gen::Low::any, round % 2 == 1);
    brute::Raw raw = brute::raw_of(in);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (brute::mask_cost(raw, mask) > raw.budget) continue;
      JobSet tested;
      for (std::size_t j = 0; j < n; ++j)
        if ((mask >> j) & 1u) tested.push_back(j);
      Schedule s = spt_schedule(in, tested);
      EXPECT_EQ(total_completion_time(in, s), brute::tct_all_orders(brute::realized(raw, mask)));
    }
  }
}

TEST(Property, MakespanIgnoresOrderAndReverseSumsMatch) {
  brute::Gen gen(12);
  for (int round = 0; round < 30; ++round) {
    std::size_t n = static_cast<std::size_t>(gen.pick(1, 5));
    Instance in = gen.instance(n, 9, 5, brute::Gen::Low::any);
    std::vector<JobId> seq(n);
    std::iota(seq.begin(), seq.end(), 0);
    std::optional<Rational> span;
    do {
      Schedule s = in_order(seq);
      Rational m = makespan(in, s);
      if (span) EXPECT_EQ(m, *span);
      span = m;
      Rational weighted = 0;
      auto fwd = s.forward_positions();
      for (JobId j = 0; j < n; ++j) weighted += Rational(to_reverse(fwd[j], n)) * in.upper(j);
      EXPECT_EQ(weighted, total_completion_time(in, s));
    } while (std::next_permutation(seq.begin(), seq.end()));
  }
}
