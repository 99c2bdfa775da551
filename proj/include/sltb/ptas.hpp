#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include "sltb/core.hpp"
#include "sltb/lp.hpp"

namespace sltb {

// Positions in this module are reverse positions: position 1 holds the job
// processed last, so a job at position i contributes i times its realized time.

enum class JobState : std::uint8_t { tested = 0, untested = 1 };

std::string_view to_string(JobState state);

// Assignment variable: job `job` sits at `position` in state `state`.
struct Var {
  JobId job = 0;
  std::size_t position = 1;
  JobState state = JobState::tested;

  auto operator<=>(const Var&) const = default;
};

std::string describe(const Var& v);

// Flat index of assignment variables for an n-job instance.
std::size_t var_index(const Var& v, std::size_t n);
Var var_at(std::size_t index, std::size_t n);
inline std::size_t var_count(std::size_t n) { return 2 * n * n; }

// Objective coefficient (position * realized time) and budget coefficient.
Rational cost_weight(const Instance& instance, const Var& v);
Rational budget_weight(const Instance& instance, const Var& v);

// A point of the assignment relaxation with cached objective and budget use.
class LpSolution {
 public:
  LpSolution(const Instance& instance, std::vector<Rational> values);

  std::size_t jobs() const { return n_; }
  const Rational& at(const Var& v) const { return values_[var_index(v, n_)]; }
  const std::vector<Rational>& values() const { return values_; }
  const Rational& cost() const { return cost_; }
  const Rational& budget_use() const { return budget_use_; }

  // Adds `delta` to a variable and keeps the caches in step.
  void add(const Var& v, const Rational& delta);

  std::vector<Var> fractional() const;  // sorted
  std::size_t integral_count() const;
  bool integral() const;

  // Recomputes both caches from scratch; throws invariant_breach on mismatch.
  void verify_caches() const;

 private:
  std::shared_ptr<const Instance> instance_;
  std::size_t n_;
  std::vector<Rational> values_;
  Rational cost_;
  Rational budget_use_;
};

// Guessed structure of an optimal solution: pinned assignments, jobs that
// must be tested, and positions allowed to hold between 0 and 2 jobs.
struct Fixation {
  JobSet tested_jobs;
  std::vector<Var> fixed_vars;
  std::vector<std::size_t> crowded;  // sorted
};

void validate_fixation(const Instance& instance, const Fixation& fixation);

// The relaxation for a fixation. Variable k is var_at(k, n).
LinearProgram build_lp(const Instance& instance, const Fixation& fixation);

// First violated constraint of the relaxation for `fixation`, if any.
std::optional<std::string> violation(const Instance& instance, const Fixation& fixation,
                                     const LpSolution& x);

// Alternating walk position -> job -> position -> ... The edge leading into a
// job has odd (1-based) index; the edge leaving it has even index.
class Path {
 public:
  explicit Path(std::vector<Var> edges);

  const std::vector<Var>& edges() const { return edges_; }
  std::size_t start() const { return edges_.front().position; }
  std::size_t end() const { return edges_.back().position; }
  bool is_cycle() const { return start() == end(); }

  std::vector<JobId> jobs() const;                // path order
  std::vector<std::size_t> positions() const;     // path order, endpoints included
  std::vector<std::size_t> inner_positions() const;  // positions minus both endpoints
  std::vector<Var> variable_set() const;          // sorted

  // +1 for edges leaving a job (raised by a positive shift), -1 otherwise.
  static int shift_sign(std::size_t edge_index) { return edge_index % 2 == 0 ? -1 : 1; }

  // Budget use gained per unit of positive shift.
  Rational budget_rate(const Instance& instance) const;
  // Objective change per unit of positive shift.
  Rational cost_slope(const Instance& instance) const;

  bool fractional(const LpSolution& x) const;
  // Odd edges all equal some y and even edges all equal 1 - y.
  bool alternating(const LpSolution& x) const;

  // Splits at an inner position into the prefix ending there and the suffix
  // starting there.
  std::pair<Path, Path> cut(std::size_t position) const;

 private:
  std::vector<Var> edges_;
};

// Odd edges drop by delta, even edges rise by delta. Checks that budget use
// changes by exactly delta * budget_rate.
LpSolution shift(const Instance& instance, const LpSolution& x, const Path& path,
                 const Rational& delta);

struct MergeOutcome {
  LpSolution x;
  Rational delta;
  std::vector<std::size_t> new_crowded;  // endpoints of non-cyclic paths
};

// With one path (budget rate zero) shifts it alone; with two paths (both rates
// nonzero) shifts them with opposite budget effects so total budget use is
// unchanged. The direction never raises the objective and the magnitude is the
// largest keeping every value in [0, 1].
MergeOutcome merge_shift(const Instance& instance, const LpSolution& x, const Path& first,
                         const Path* second = nullptr);

// Cycle over fractional variables: start at the smallest fractional variable
// and keep taking the smallest unused fractional edge until a node repeats.
std::optional<Path> find_cycle(const LpSolution& x);

struct CycleElimination {
  LpSolution x;
  std::optional<Path> blocking;  // the single remaining critical cycle
  std::size_t merges = 0;
};

CycleElimination eliminate_cycles(const Instance& instance, const LpSolution& x);

// Cut position for a path given k = 1/epsilon.
std::size_t select_cut_position(const Path& path, std::size_t inv_eps);

// Debug aid tracking the charging map from crowded and candidate cut positions
// to sets of k smaller positions that are never crowded.
class ChargingTracker {
 public:
  ChargingTracker(std::size_t inv_eps, std::size_t pinned);

  // Builds the first map using pinned positions only; false if none exists.
  bool begin(const Path& path, const std::vector<std::size_t>& crowded);
  // Follows one cut. `path` is the remaining fractional path or null once
  // everything is integral. Throws invariant_breach if no valid map remains.
  void advance(const Path* path, const std::vector<std::size_t>& crowded);

  bool active() const { return active_; }
  const std::map<std::size_t, std::vector<std::size_t>>& charges() const { return charges_; }

 private:
  std::vector<std::size_t> charged_set(const Path* path, const std::vector<std::size_t>& crowded) const;
  void check(const Path* path) const;

  std::size_t k_;
  std::size_t pinned_;
  bool active_ = false;
  std::map<std::size_t, std::vector<std::size_t>> charges_;
};

struct EjectedJob {
  JobId job;
  std::size_t position;
};

struct RepeatedCutResult {
  LpSolution x;
  std::vector<std::size_t> crowded;
  std::optional<EjectedJob> ejected;
  std::size_t iterations = 0;
};

// Rounds the blocking cycle. Every iteration checks that x is feasible for the
// relaxation with the current crowded set and that the remaining path is
// critical, fractional, alternating and ends in crowded positions.
RepeatedCutResult repeated_cut(const Instance& instance, const Fixation& fixation,
                               const LpSolution& x, const Path& cycle, std::size_t inv_eps,
                               ChargingTracker* tracker = nullptr);

struct DecrowdResult {
  LpSolution x;
  std::vector<std::size_t> before;  // position of each job before
  std::vector<std::size_t> after;
  Rational max_ratio;               // largest after/before over all jobs
};

// Repacks an integral assignment where crowded positions hold 0..2 jobs into
// one job per position. Jobs keep their relative order; at a doubly occupied
// position the job with the smaller realized time keeps the lower position.
DecrowdResult decrowd(const Instance& instance, const LpSolution& x,
                      const std::vector<std::size_t>& crowded);

// Moves `job` to `position` as untested, shifting the jobs in between up by one.
LpSolution reinsert_untested(const Instance& instance, const LpSolution& x, JobId job,
                             std::size_t position);

Schedule to_schedule(const Instance& instance, const LpSolution& x);

// Number of pinned positions: min(n, (2k + 1) * k) for k = 1/epsilon.
std::size_t pinned_positions(std::size_t n, std::size_t inv_eps);

// Walks every assignment of distinct (job, state) pairs to positions
// 1..pinned_positions in lexicographic order, skipping pins whose tested cost
// exceeds the budget.
class FixationEnumerator {
 public:
  FixationEnumerator(const Instance& instance, std::size_t inv_eps);
  std::optional<Fixation> next();

 private:
  const Instance& instance_;
  std::size_t slots_;
  std::vector<std::size_t> digit_;  // 2 * job + state per slot
  bool done_ = false;
  bool started_ = false;
  bool advance();
  bool distinct() const;
};

// Largest k with 1/k <= epsilon; epsilon must lie in (0, 1].
std::size_t inverse_epsilon(const Rational& epsilon);

// Worst-case factor: (M+1)/M * ((1 + 1/k) + 2/M) with M = (2k+1)k.
Rational ptas_bound(std::size_t inv_eps);

struct PtasOptions {
  bool track_charging = false;
  std::function<void(const std::string&)> trace;  // receives JSON lines
};

struct PtasStats {
  std::size_t fixations = 0;
  std::size_t lp_solves = 0;
  std::size_t lp_infeasible = 0;
  std::size_t lp_pivots = 0;
  std::size_t merges = 0;
  std::size_t blocking_cycles = 0;
  std::size_t cut_iterations = 0;
  std::size_t ejections = 0;
  std::size_t invariant_checks = 0;
  std::size_t charging_started = 0;
  std::size_t charging_unavailable = 0;
  Rational max_decrowd_ratio = 1;
};

struct PtasResult {
  Schedule schedule;       // SPT order of the chosen tested set
  Rational value;          // total completion time of `schedule`
  Rational rounded_cost;   // objective of the rounded assignment before reordering
  std::size_t inv_eps = 1;
  std::size_t pinned = 0;
  Fixation fixation;
  PtasStats stats;
};

PtasResult ptas_solve(const Instance& instance, const Rational& epsilon,
                      const PtasOptions& options = {});

}  // namespace sltb
