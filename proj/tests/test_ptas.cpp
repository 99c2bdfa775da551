#include <gtest/gtest.h>

#include "json.hpp"
#include "sltb/lp.hpp"
#include "sltb/oracle.hpp"
#include "sltb/ptas.hpp"
#include "support/brute.hpp"

using namespace sltb;

namespace {

constexpr JobState T = JobState::tested;
constexpr JobState U = JobState::untested;

LpSolution assignment(const Instance& in, const std::vector<std::pair<Var, Rational>>& entries) {
  std::vector<Rational> values(var_count(in.size()), Rational(0));
  for (const auto& [v, value] : entries) values[var_index(v, in.size())] = value;
  return LpSolution(in, values);
}

// Path through distinct jobs 0, 1, ... visiting `positions` in order.
Path chain(const std::vector<std::size_t>& positions, JobState state = T) {
  std::vector<Var> edges;
  for (std::size_t m = 0; m + 1 < positions.size(); ++m) {
    edges.push_back({m, positions[m], state});
    edges.push_back({m, positions[m + 1], state});
  }
  return Path(edges);
}

std::vector<Rational> position_sums(const LpSolution& x) {
  const std::size_t n = x.jobs();
  std::vector<Rational> sums(n + 1);
  for (std::size_t k = 0; k < x.values().size(); ++k) sums[var_at(k, n).position] += x.values()[k];
  return sums;
}

Instance unit_instance(std::size_t n, Rational budget) {
  std::vector<Rational> ones(n, Rational(1));
  return Instance::with_lower(ones, std::vector<Rational>(n, Rational(0)), ones, budget);
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::parse_error;
}

}  // namespace

TEST(Vars, IndexRoundTrip) {
  for (std::size_t n = 1; n <= 5; ++n)
    for (std::size_t k = 0; k < var_count(n); ++k) EXPECT_EQ(var_index(var_at(k, n), n), k);
}

TEST(BuildLp, SingleJob) {
  Instance cheap = Instance::with_lower({5}, {1}, {2}, 3);
  LinearProgram lp = build_lp(cheap, {});
  EXPECT_EQ(lp.variable_count(), 2u);
  LpResult r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.x[var_index({0, 1, T}, 1)], 1);
  Instance dear = Instance::with_lower({5}, {1}, {4}, 3);
  LpResult split = solve(build_lp(dear, {}));
  EXPECT_EQ(split.x[var_index({0, 1, T}, 1)], Rational(3, 4));
  EXPECT_EQ(split.x[var_index({0, 1, U}, 1)], Rational(1, 4));
  EXPECT_EQ(split.value, Rational(3, 4) * 1 + Rational(1, 4) * 5);
  Instance flat = Instance::with_lower({5}, {5}, {1}, 3);
  EXPECT_EQ(solve(build_lp(flat, {})).value, 5);
}

TEST(BuildLp, CrowdedPositionIsTwoSided) {
  Instance in = unit_instance(3, 1);
  std::size_t plain = build_lp(in, {}).rows().size();
  Fixation f;
  f.crowded = {2};
  LinearProgram lp = build_lp(in, f);
  EXPECT_EQ(lp.rows().size(), plain + 1);
  // Positions 1 and 3 hold one job each; position 2 may hold one as well or stay empty.
  std::vector<Rational> x(var_count(3), Rational(0));
  x[var_index({0, 1, U}, 3)] = 1;
  x[var_index({1, 3, U}, 3)] = 1;
  x[var_index({2, 3, U}, 3)] = 0;
  x[var_index({2, 2, U}, 3)] = 1;
  EXPECT_TRUE(lp.feasible(x));
  x[var_index({2, 2, U}, 3)] = 0;
  x[var_index({2, 1, U}, 3)] = 1;
  EXPECT_FALSE(lp.feasible(x));  // position 1 is not crowded
}

TEST(BuildLp, RejectsInconsistentFixations) {
  Instance in = unit_instance(3, 1);
  Fixation both;
  both.fixed_vars = {{0, 1, U}};
  both.tested_jobs = {0};
  EXPECT_EQ(kind_of([&] { build_lp(in, both); }), ErrorKind::invalid_fixation);
  Fixation clash;
  clash.fixed_vars = {{0, 1, U}, {1, 1, U}};
  EXPECT_EQ(kind_of([&] { build_lp(in, clash); }), ErrorKind::invalid_fixation);
}

TEST(Paths, Structure) {
  EXPECT_EQ(kind_of([] { Path({{0, 1, T}}); }), ErrorKind::invalid_path);
  EXPECT_EQ(kind_of([] { Path({{0, 1, T}, {1, 2, T}}); }), ErrorKind::invalid_path);
  EXPECT_EQ(kind_of([] { Path({{0, 1, T}, {0, 2, T}, {0, 2, U}, {0, 3, U}}); }), ErrorKind::invalid_path);
  Path p = chain({4, 7, 2, 9});
  EXPECT_EQ(p.positions(), (std::vector<std::size_t>{4, 7, 2, 9}));
  EXPECT_EQ(p.inner_positions(), (std::vector<std::size_t>{7, 2}));
  EXPECT_EQ(p.jobs(), (std::vector<JobId>{0, 1, 2}));
  EXPECT_FALSE(p.is_cycle());
  auto [head, tail] = p.cut(2);
  EXPECT_EQ(head.positions(), (std::vector<std::size_t>{4, 7, 2}));
  EXPECT_EQ(tail.positions(), (std::vector<std::size_t>{2, 9}));
  EXPECT_THROW(p.cut(4), Error);
}

TEST(Paths, BudgetRateCountsStateChanges) {
  // Job 0 enters untested and leaves tested, job 1 the other way round.
  Instance in = Instance::with_lower({4, 4, 4}, {1, 1, 1}, {5, 3, 1}, 9);
  Path p({{0, 1, U}, {0, 2, T}, {1, 2, T}, {1, 3, U}});
  EXPECT_EQ(p.budget_rate(in), Rational(5 - 3));
}

TEST(Shift, BudgetIdentityAndRange) {
  Instance in = Instance::with_lower({4, 4, 4}, {1, 1, 1}, {5, 3, 1}, 9);
  Path p({{0, 1, U}, {0, 2, T}, {1, 2, T}, {1, 3, U}});
  LpSolution x = assignment(in, {{{0, 1, U}, Rational(1, 2)},
                                 {{0, 2, T}, Rational(1, 2)},
                                 {{1, 2, T}, Rational(1, 2)},
                                 {{1, 3, U}, Rational(1, 2)}});
  LpSolution y = shift(in, x, p, Rational(1, 5));
  EXPECT_EQ(y.budget_use(), x.budget_use() + Rational(1, 5) * p.budget_rate(in));
  EXPECT_EQ(y.at({0, 1, U}), Rational(3, 10));
  EXPECT_EQ(y.at({0, 2, T}), Rational(7, 10));
  y.verify_caches();
  EXPECT_EQ(shift(in, x, p, 0).values(), x.values());
  EXPECT_EQ(kind_of([&] { shift(in, x, p, Rational(3, 5)); }), ErrorKind::delta_out_of_range);
}

TEST(Property, CycleShiftKeepsPositionMass) {
  brute::Gen gen(61);
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = 4;
    Instance in = gen.instance(n, 9, 5, brute::Gen::Low::any);
    // Jobs 0 and 1 share positions 1 and 2 in mixed states.
    JobState s[4];
    for (auto& st : s) st = gen.pick(0, 1) ? T : U;
    Path cyc({{0, 1, s[0]}, {0, 2, s[1]}, {1, 2, s[2]}, {1, 1, s[3]}});
    Rational y(gen.pick(1, 9), 10);
    LpSolution x = assignment(in, {{{0, 1, s[0]}, y},
                                   {{0, 2, s[1]}, 1 - y},
                                   {{1, 2, s[2]}, y},
                                   {{1, 1, s[3]}, 1 - y},
                                   {{2, 3, U}, 1},
                                   {{3, 4, U}, 1}});
    Rational delta = Rational(gen.pick(0, 10), 10) * std::min(y, 1 - y);
    LpSolution z = shift(in, x, cyc, delta);
    EXPECT_EQ(position_sums(z), position_sums(x));
    EXPECT_EQ(z.budget_use(), x.budget_use() + delta * cyc.budget_rate(in));
    EXPECT_TRUE(cyc.alternating(z));
  }
}

TEST(Merge, ZeroRateCycleRounds) {
  Instance in = Instance::with_lower({3, 5}, {1, 1}, {1, 1}, 0);
  Path cyc({{0, 1, U}, {0, 2, U}, {1, 2, U}, {1, 1, U}});
  LpSolution x = assignment(in, {{{0, 1, U}, Rational(1, 2)},
                                 {{0, 2, U}, Rational(1, 2)},
                                 {{1, 2, U}, Rational(1, 2)},
                                 {{1, 1, U}, Rational(1, 2)}});
  MergeOutcome m = merge_shift(in, x, cyc);
  EXPECT_TRUE(m.x.integral());
  EXPECT_LE(m.x.cost(), x.cost());
  EXPECT_TRUE(m.new_crowded.empty());
  // The longer job belongs at the lower reverse position.
  EXPECT_EQ(m.x.at({1, 1, U}), 1);
}

TEST(Merge, TwoPathsKeepBudget) {
  Instance in = Instance::with_lower({6, 6}, {1, 2}, {2, 1}, 2);
  Path p({{0, 1, T}, {0, 1, U}});   // rate -2
  Path q({{1, 2, U}, {1, 2, T}});   // rate +1
  EXPECT_EQ(p.budget_rate(in), -2);
  EXPECT_EQ(q.budget_rate(in), 1);
  LpSolution x = assignment(in, {{{0, 1, T}, Rational(3, 10)},
                                 {{0, 1, U}, Rational(7, 10)},
                                 {{1, 2, U}, Rational(6, 10)},
                                 {{1, 2, T}, Rational(4, 10)}});
  MergeOutcome m = merge_shift(in, x, p, &q);
  EXPECT_EQ(m.x.budget_use(), x.budget_use());
  EXPECT_LE(m.x.cost(), x.cost());
  EXPECT_GT(m.x.integral_count(), x.integral_count());
  EXPECT_EQ(kind_of([&] { merge_shift(in, x, p, &p); }), ErrorKind::identical_paths);
  EXPECT_EQ(kind_of([&] { merge_shift(in, x, p); }), ErrorKind::invalid_argument);
}

TEST(Cycles, IntegralInputIsUntouched) {
  Instance in = unit_instance(2, 1);
  LpSolution x = assignment(in, {{{0, 1, T}, 1}, {{1, 2, U}, 1}});
  EXPECT_FALSE(find_cycle(x).has_value());
  CycleElimination ce = eliminate_cycles(in, x);
  EXPECT_EQ(ce.x.values(), x.values());
  EXPECT_FALSE(ce.blocking.has_value());
  EXPECT_EQ(ce.merges, 0u);
}

TEST(Cycles, TwoZeroRateCyclesBothRound) {
  Instance in = Instance::with_lower({1, 2, 3, 4}, {0, 0, 0, 0}, {1, 1, 1, 1}, 0);
  Rational h(1, 2);
  LpSolution x = assignment(in, {{{0, 1, U}, h}, {{0, 2, U}, h}, {{1, 1, U}, h}, {{1, 2, U}, h},
                                 {{2, 3, U}, h}, {{2, 4, U}, h}, {{3, 3, U}, h}, {{3, 4, U}, h}});
  CycleElimination ce = eliminate_cycles(in, x);
  EXPECT_TRUE(ce.x.integral());
  EXPECT_FALSE(ce.blocking.has_value());
  EXPECT_EQ(ce.merges, 2u);
}

TEST(Cycles, SingleCriticalCycleIsReturned) {
  Instance in = Instance::with_lower({5}, {1}, {2}, 1);
  LpSolution x = assignment(in, {{{0, 1, T}, Rational(1, 2)}, {{0, 1, U}, Rational(1, 2)}});
  CycleElimination ce = eliminate_cycles(in, x);
  ASSERT_TRUE(ce.blocking.has_value());
  EXPECT_TRUE(ce.blocking->alternating(ce.x));
  EXPECT_EQ(ce.blocking->variable_set(), ce.x.fractional());
}

TEST(CutPosition, Examples) {
  // Inner positions in path order 22,17,20,21,24,25,26,27 with k = 2.
  Path p = chain({1, 22, 17, 20, 21, 24, 25, 26, 27, 2});
  EXPECT_EQ(select_cut_position(p, 2), 20u);
  EXPECT_EQ(select_cut_position(chain({3, 8, 5}), 2), 8u);
  EXPECT_THROW(select_cut_position(chain({3, 5}), 1), Error);
}

TEST(Property, CutSplitsTheSmallestPositionsEvenly) {
  std::mt19937_64 rng(62);
  for (int round = 0; round < 60; ++round) {
    std::size_t k = 1 + round % 3;
    std::vector<std::size_t> inner(2 * k + 1);
    std::iota(inner.begin(), inner.end(), 10);
    std::shuffle(inner.begin(), inner.end(), rng);
    std::vector<std::size_t> ps{1};
    ps.insert(ps.end(), inner.begin(), inner.end());
    ps.push_back(2);
    Path p = chain(ps);
    auto [head, tail] = p.cut(select_cut_position(p, k));
    EXPECT_EQ(head.inner_positions().size(), k);
    EXPECT_EQ(tail.inner_positions().size(), k);
  }
}

TEST(Charging, BeginNeedsEnoughPinnedPositions) {
  Path p = chain({9, 12, 10});  // inner {12}, start 9
  ChargingTracker enough(1, 3);
  EXPECT_TRUE(enough.begin(p, {9}));
  EXPECT_EQ(enough.charges().size(), 2u);
  for (const auto& [owner, targets] : enough.charges()) {
    ASSERT_EQ(targets.size(), 1u);
    EXPECT_LT(targets[0], owner);
  }
  ChargingTracker short_of(2, 3);
  EXPECT_FALSE(short_of.begin(p, {9}));
  EXPECT_FALSE(short_of.active());
}

TEST(RepeatedCut, EmptyInnerSetReschedulesTheJob) {
  Instance in = Instance::with_lower({5}, {1}, {2}, 1);
  LpSolution x = assignment(in, {{{0, 1, T}, Rational(1, 2)}, {{0, 1, U}, Rational(1, 2)}});
  Path cyc({{0, 1, T}, {0, 1, U}});
  RepeatedCutResult r = repeated_cut(in, {}, x, cyc, 1);
  EXPECT_TRUE(r.x.integral());
  EXPECT_EQ(r.x.at({0, 1, U}), 1);
  ASSERT_TRUE(r.ejected.has_value());
  EXPECT_EQ(r.ejected->job, 0u);
  EXPECT_LE(r.x.budget_use(), in.budget());
}

TEST(Decrowd, Examples) {
  Instance in = Instance::with_lower({3, 7, 2}, {0, 0, 0}, {1, 1, 1}, 0);
  LpSolution plain = assignment(in, {{{0, 1, U}, 1}, {{1, 2, U}, 1}, {{2, 3, U}, 1}});
  DecrowdResult same = decrowd(in, plain, {});
  EXPECT_EQ(same.x.values(), plain.values());
  EXPECT_EQ(same.max_ratio, 1);

  LpSolution crowded = assignment(in, {{{0, 1, U}, 1}, {{1, 2, U}, 1}, {{2, 2, U}, 1}});
  DecrowdResult d = decrowd(in, crowded, {2, 3});
  EXPECT_EQ(d.x.at({2, 2, U}), 1);  // shorter job keeps the position
  EXPECT_EQ(d.x.at({1, 3, U}), 1);
  EXPECT_EQ(d.max_ratio, Rational(3, 2));
  EXPECT_EQ(kind_of([&] { decrowd(in, crowded, {}); }), ErrorKind::invariant_breach);
}

TEST(Reinsert, ShiftsTheJobsBetween) {
  Instance in = unit_instance(3, 3);
  LpSolution x = assignment(in, {{{0, 1, T}, 1}, {{1, 2, T}, 1}, {{2, 3, T}, 1}});
  LpSolution y = reinsert_untested(in, x, 2, 1);
  EXPECT_EQ(y.at({2, 1, U}), 1);
  EXPECT_EQ(y.at({0, 2, T}), 1);
  EXPECT_EQ(y.at({1, 3, T}), 1);
  Schedule s = to_schedule(in, y);
  EXPECT_EQ(s.sequence, (std::vector<JobId>{1, 0, 2}));  // reverse position 1 runs last
  EXPECT_EQ(s.tested, (JobSet{0, 1}));
}

TEST(Parameters, EpsilonAndBound) {
  EXPECT_EQ(inverse_epsilon(1), 1u);
  EXPECT_EQ(inverse_epsilon(Rational(1, 2)), 2u);
  EXPECT_EQ(inverse_epsilon(Rational(2, 5)), 3u);
  EXPECT_EQ(kind_of([] { inverse_epsilon(2); }), ErrorKind::invalid_epsilon);
  EXPECT_EQ(ptas_bound(1), Rational(32, 9));
  EXPECT_EQ(Rational(4, 3) * (2 + Rational(2, 3)), Rational(32, 9));
  EXPECT_EQ(pinned_positions(4, 1), 3u);
  EXPECT_EQ(pinned_positions(8, 2), 8u);
  EXPECT_EQ(pinned_positions(20, 2), 10u);
}

TEST(Fixations, CountAndForcedTests) {
  Instance in = Instance::with_lower({4, 3, 2, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, 100);
  FixationEnumerator all(in, 1);
  std::size_t count = 0;
  while (auto f = all.next()) {
    ++count;
    EXPECT_NO_THROW(validate_fixation(in, *f));
    EXPECT_EQ(f->fixed_vars.size(), 3u);
  }
  EXPECT_EQ(count, 4u * 3 * 2 * 8);
  EXPECT_LE(count, 512u);

  // Job 3 untested at position 1 with the others tested: minimum realized time 1.
  Instance tight = Instance::with_lower({4, 3, 2, 1}, {1, 1, 1, 1}, {1, 1, 1, 1}, 3);
  FixationEnumerator e(tight, 1);
  bool seen = false;
  while (auto f = e.next()) {
    if (f->fixed_vars == std::vector<Var>{{3, 1, U}, {2, 2, U}, {1, 3, U}}) {
      seen = true;
      EXPECT_EQ(f->tested_jobs, (JobSet{0}));
    }
    Rational spent = 0;
    for (const Var& v : f->fixed_vars) spent += v.state == T ? tight.cost(v.job) : Rational(0);
    for (JobId j : f->tested_jobs) spent += tight.cost(j);
    EXPECT_LE(spent, tight.budget());
  }
  EXPECT_TRUE(seen);
}

TEST(Property, OptimalFixationIsEnumerated) {
  brute::Gen gen(63);
  for (int round = 0; round < 20; ++round) {
    std::size_t n = static_cast<std::size_t>(gen.pick(1, 6));
    Instance in = gen.instance(n, 9, 5, brute::Gen::Low::any);
    OracleResult opt = exact_solve(in, Objective::tct);
    Schedule s = spt_schedule(in, opt.best_tested);
    std::vector<Var> pins;
    for (std::size_t i = 1; i <= pinned_positions(n, 1); ++i) {
      JobId j = s.sequence[to_forward(i, n) - 1];
      bool t = std::binary_search(opt.best_tested.begin(), opt.best_tested.end(), j);
      pins.push_back({j, i, t ? T : U});
    }
    FixationEnumerator e(in, 1);
    bool seen = false;
    while (auto f = e.next()) seen = seen || f->fixed_vars == pins;
    EXPECT_TRUE(seen);
  }
}

TEST(Property, RelaxationBoundsTheOptimum) {
  brute::Gen gen(64);
  for (int round = 0; round < 40; ++round) {
    std::size_t n = static_cast<std::size_t>(gen.pick(1, 6));
    Instance in = gen.instance(n, 9, 5, brute::Gen::Low::any);
    LpResult r = solve(build_lp(in, {}));
    ASSERT_EQ(r.status, LpStatus::optimal);
    EXPECT_LE(r.value, brute::optimum(brute::raw_of(in), brute::Goal::tct));
  }
}

TEST(Ptas, ZeroBudgetGivesUntestedSpt) {
  Instance in = Instance::with_lower({4, 1, 6, 2, 3}, {0, 0, 0, 0, 0}, {1, 1, 1, 1, 1}, 0);
  PtasResult r = ptas_solve(in, 1);
  EXPECT_TRUE(r.schedule.tested.empty());
  EXPECT_EQ(r.value, brute::tct_sorted(in.uppers()));
}

TEST(Ptas, TraceLinesAreJson) {
  brute::Gen gen(65);
  Instance in = gen.instance(6, 9, 5, brute::Gen::Low::any);
  PtasOptions options;
  std::size_t lines = 0;
  options.trace = [&](const std::string& line) {
    ++lines;
    EXPECT_NO_THROW(nlohmann::json::parse(line));
  };
  ptas_solve(in, 1, options);
  EXPECT_GT(lines, 1u);
}

TEST(Property, PtasWithinBoundWithAllChecks) {
  brute::Gen gen(66);
  PtasOptions options;
  options.track_charging = true;
  std::size_t blocking = 0;
  for (int round = 0; round < 30; ++round) {
    std::size_t n = static_cast<std::size_t>(gen.pick(1, 7));
    Instance in = gen.instance(n, 12, 6, brute::Gen::Low::any, round % 2 == 0);
    PtasResult r = ptas_solve(in, 1, options);
    Rational opt = brute::optimum(brute::raw_of(in), brute::Goal::tct);
    EXPECT_NO_THROW(validate(in, r.schedule));
    EXPECT_EQ(total_completion_time(in, r.schedule), r.value);
    EXPECT_GE(r.value, opt);
    EXPECT_LE(r.value, ptas_bound(1) * opt);
    EXPECT_LE(r.rounded_cost, ptas_bound(1) * opt);
    EXPECT_LE(r.stats.max_decrowd_ratio, 2);
    blocking += r.stats.blocking_cycles;
  }
  EXPECT_GT(blocking, 0u);
}
