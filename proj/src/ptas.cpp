#include "sltb/ptas.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "json.hpp"

namespace sltb {

namespace {

std::size_t state_bit(JobState s) { return s == JobState::tested ? 0 : 1; }

[[noreturn]] void breach(const std::string& what) { fail(ErrorKind::invariant_breach, what); }

struct Node {
  bool is_job;
  std::size_t id;  // job id or position
  auto operator<=>(const Node&) const = default;
};

Node job_node(JobId j) { return {true, j}; }
Node position_node(std::size_t i) { return {false, i}; }
Node other_end(const Var& v, const Node& from) {
  return from.is_job ? position_node(v.position) : job_node(v.job);
}

// Fractional edges grouped by endpoint, each list sorted.
struct FractionalGraph {
  std::vector<std::vector<Var>> by_job;
  std::vector<std::vector<Var>> by_position;  // index = position

  explicit FractionalGraph(const LpSolution& x) : by_job(x.jobs()), by_position(x.jobs() + 1) {
    for (const Var& v : x.fractional()) {
      by_job[v.job].push_back(v);
      by_position[v.position].push_back(v);
    }
  }
  const std::vector<Var>& at(const Node& node) const {
    return node.is_job ? by_job[node.id] : by_position[node.id];
  }
};

std::vector<std::size_t> merge_sorted(std::vector<std::size_t> a, const std::vector<std::size_t>& b) {
  a.insert(a.end(), b.begin(), b.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  return a;
}

bool contains(const std::vector<std::size_t>& sorted, std::size_t v) {
  return std::binary_search(sorted.begin(), sorted.end(), v);
}

// Applies a shift without range checks and verifies the budget identity.
void apply_shift(const Instance& instance, LpSolution& x, const Path& path, const Rational& delta) {
  const Rational before = x.budget_use();
  const auto& edges = path.edges();
  for (std::size_t k = 0; k < edges.size(); ++k) {
    x.add(edges[k], Path::shift_sign(k) * delta);
  }
  if (x.budget_use() != before + delta * path.budget_rate(instance)) {
    breach("budget identity failed for a shift");
  }
}

bool in_unit_range(const LpSolution& x) {
  for (const auto& v : x.values()) {
    if (v < 0 || v > 1) return false;
  }
  return true;
}

std::string json_rational(const Rational& r) { return format_rational(r); }

}  // namespace

std::string_view to_string(JobState state) {
  return state == JobState::tested ? "tested" : "untested";
}

std::string describe(const Var& v) {
  return "x[" + std::to_string(v.job) + "," + std::to_string(v.position) + "," +
         std::string(to_string(v.state)) + "]";
}

std::size_t var_index(const Var& v, std::size_t n) {
  return (v.job * n + (v.position - 1)) * 2 + state_bit(v.state);
}

Var var_at(std::size_t index, std::size_t n) {
  Var v;
  v.state = index % 2 == 0 ? JobState::tested : JobState::untested;
  std::size_t rest = index / 2;
  v.job = rest / n;
  v.position = rest % n + 1;
  return v;
}

Rational cost_weight(const Instance& instance, const Var& v) {
  return Rational(v.position) * instance.realized(v.job, v.state == JobState::tested);
}

Rational budget_weight(const Instance& instance, const Var& v) {
  return v.state == JobState::tested ? instance.cost(v.job) : Rational(0);
}

// ---------------------------------------------------------------- LpSolution

LpSolution::LpSolution(const Instance& instance, std::vector<Rational> values)
    : instance_(std::make_shared<const Instance>(instance)),
      n_(instance.size()),
      values_(std::move(values)) {
  require(instance.lower_known(), ErrorKind::missing_lower_time,
          "the relaxation needs every lower time");
  require(values_.size() == var_count(n_), ErrorKind::invalid_argument, "wrong number of values");
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (values_[k] == 0) continue;
    Var v = var_at(k, n_);
    cost_ += values_[k] * cost_weight(*instance_, v);
    budget_use_ += values_[k] * budget_weight(*instance_, v);
  }
}

void LpSolution::add(const Var& v, const Rational& delta) {
  values_[var_index(v, n_)] += delta;
  cost_ += delta * cost_weight(*instance_, v);
  budget_use_ += delta * budget_weight(*instance_, v);
}

std::vector<Var> LpSolution::fractional() const {
  std::vector<Var> out;
  for (std::size_t k = 0; k < values_.size(); ++k) {
    if (!is_integer(values_[k])) out.push_back(var_at(k, n_));
  }
  return out;
}

std::size_t LpSolution::integral_count() const {
  std::size_t c = 0;
  for (const auto& v : values_) c += is_integer(v);
  return c;
}

bool LpSolution::integral() const { return integral_count() == values_.size(); }

void LpSolution::verify_caches() const {
  LpSolution fresh(*instance_, values_);
  if (fresh.cost_ != cost_ || fresh.budget_use_ != budget_use_) {
    breach("cached objective or budget use drifted");
  }
}

// ------------------------------------------------------------------ Fixation

void validate_fixation(const Instance& instance, const Fixation& fixation) {
  const std::size_t n = instance.size();
  require(is_job_set(fixation.tested_jobs, n), ErrorKind::invalid_fixation,
          "tested jobs are not a sorted job set");
  std::set<JobId> jobs;
  std::set<std::size_t> positions;
  for (const Var& v : fixation.fixed_vars) {
    require(v.job < n && v.position >= 1 && v.position <= n, ErrorKind::invalid_fixation,
            "fixed variable out of range");
    require(jobs.insert(v.job).second && positions.insert(v.position).second,
            ErrorKind::invalid_fixation, "fixed variables share a job or a position");
    require(!std::binary_search(fixation.tested_jobs.begin(), fixation.tested_jobs.end(), v.job),
            ErrorKind::invalid_fixation, "a pinned job is also forced to be tested");
  }
  for (std::size_t k = 0; k < fixation.crowded.size(); ++k) {
    std::size_t i = fixation.crowded[k];
    require(i >= 1 && i <= n && (k == 0 || fixation.crowded[k - 1] < i),
            ErrorKind::invalid_fixation, "crowded positions must be sorted and in range");
  }
}

LinearProgram build_lp(const Instance& instance, const Fixation& fixation) {
  validate_fixation(instance, fixation);
  const std::size_t n = instance.size();
  LinearProgram lp;
  for (std::size_t k = 0; k < var_count(n); ++k) {
    lp.add_variable(Rational(0), Rational(1), cost_weight(instance, var_at(k, n)));
  }
  for (const Var& v : fixation.fixed_vars) {
    lp.set_bounds(var_index(v, n), Rational(1), Rational(1));
  }
  for (std::size_t i = 1; i <= n; ++i) {
    std::vector<LpTerm> row;
    for (JobId j = 0; j < n; ++j) {
      for (JobState s : {JobState::tested, JobState::untested}) {
        row.push_back({var_index({j, i, s}, n), Rational(1)});
      }
    }
    if (contains(fixation.crowded, i)) {
      std::vector<LpTerm> neg = row;
      for (auto& t : neg) t.coef = -1;
      lp.add_row(row, Relation::less_equal, Rational(2));
      lp.add_row(neg, Relation::less_equal, Rational(0));
    } else {
      lp.add_row(row, Relation::equal, Rational(1));
    }
  }
  for (JobId j = 0; j < n; ++j) {
    std::vector<LpTerm> row;
    for (std::size_t i = 1; i <= n; ++i) {
      for (JobState s : {JobState::tested, JobState::untested}) {
        row.push_back({var_index({j, i, s}, n), Rational(1)});
      }
    }
    lp.add_row(row, Relation::equal, Rational(1));
  }
  std::vector<LpTerm> budget;
  for (JobId j = 0; j < n; ++j) {
    for (std::size_t i = 1; i <= n; ++i) {
      budget.push_back({var_index({j, i, JobState::tested}, n), instance.cost(j)});
    }
  }
  lp.add_row(budget, Relation::less_equal, instance.budget());
  for (JobId j : fixation.tested_jobs) {
    std::vector<LpTerm> row;
    for (std::size_t i = 1; i <= n; ++i) {
      row.push_back({var_index({j, i, JobState::tested}, n), Rational(1)});
    }
    lp.add_row(row, Relation::equal, Rational(1));
  }
  return lp;
}

std::optional<std::string> violation(const Instance& instance, const Fixation& fixation,
                                     const LpSolution& x) {
  const std::size_t n = instance.size();
  for (std::size_t k = 0; k < var_count(n); ++k) {
    const Rational& v = x.values()[k];
    if (v < 0 || v > 1) return "value outside [0,1] at " + describe(var_at(k, n));
  }
  for (const Var& v : fixation.fixed_vars) {
    if (x.at(v) != 1) return "fixed variable " + describe(v) + " is not 1";
  }
  for (std::size_t i = 1; i <= n; ++i) {
    Rational sum = 0;
    for (JobId j = 0; j < n; ++j) {
      sum += x.at({j, i, JobState::tested}) + x.at({j, i, JobState::untested});
    }
    if (contains(fixation.crowded, i)) {
      if (sum < 0 || sum > 2) return "crowded position " + std::to_string(i) + " outside [0,2]";
    } else if (sum != 1) {
      return "position " + std::to_string(i) + " sums to " + format_rational(sum);
    }
  }
  Rational budget = 0;
  for (JobId j = 0; j < n; ++j) {
    Rational sum = 0;
    Rational tested = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      tested += x.at({j, i, JobState::tested});
      sum += x.at({j, i, JobState::untested});
    }
    sum += tested;
    budget += tested * instance.cost(j);
    if (sum != 1) return "job " + std::to_string(j) + " sums to " + format_rational(sum);
    if (std::binary_search(fixation.tested_jobs.begin(), fixation.tested_jobs.end(), j) &&
        tested != 1) {
      return "job " + std::to_string(j) + " must be tested";
    }
  }
  if (budget > instance.budget()) return "budget exceeded";
  if (budget != x.budget_use()) return "cached budget use is stale";
  return std::nullopt;
}

// ---------------------------------------------------------------------- Path

Path::Path(std::vector<Var> edges) : edges_(std::move(edges)) {
  require(edges_.size() >= 2 && edges_.size() % 2 == 0, ErrorKind::invalid_path,
          "a path needs an even, positive number of edges");
  for (std::size_t k = 0; k + 1 < edges_.size(); ++k) {
    bool linked = k % 2 == 0 ? edges_[k].job == edges_[k + 1].job
                             : edges_[k].position == edges_[k + 1].position;
    require(linked && edges_[k] != edges_[k + 1], ErrorKind::invalid_path,
            "consecutive edges do not share a node");
  }
  auto js = jobs();
  std::sort(js.begin(), js.end());
  require(std::adjacent_find(js.begin(), js.end()) == js.end(), ErrorKind::invalid_path,
          "a job is visited twice");
  auto ps = positions();
  std::vector<std::size_t> body(ps.begin(), ps.end() - 1);
  if (ps.front() != ps.back()) body.push_back(ps.back());
  std::sort(body.begin(), body.end());
  require(std::adjacent_find(body.begin(), body.end()) == body.end(), ErrorKind::invalid_path,
          "a position is visited twice");
}

std::vector<JobId> Path::jobs() const {
  std::vector<JobId> out;
  for (std::size_t k = 0; k < edges_.size(); k += 2) out.push_back(edges_[k].job);
  return out;
}

std::vector<std::size_t> Path::positions() const {
  std::vector<std::size_t> out{edges_.front().position};
  for (std::size_t k = 1; k < edges_.size(); k += 2) out.push_back(edges_[k].position);
  return out;
}

std::vector<std::size_t> Path::inner_positions() const {
  auto ps = positions();
  return std::vector<std::size_t>(ps.begin() + 1, ps.end() - 1);
}

std::vector<Var> Path::variable_set() const {
  std::vector<Var> out = edges_;
  std::sort(out.begin(), out.end());
  return out;
}

Rational Path::budget_rate(const Instance& instance) const {
  Rational rate = 0;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (edges_[k].state == JobState::tested) rate += shift_sign(k) * instance.cost(edges_[k].job);
  }
  return rate;
}

Rational Path::cost_slope(const Instance& instance) const {
  Rational slope = 0;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    slope += shift_sign(k) * cost_weight(instance, edges_[k]);
  }
  return slope;
}

bool Path::fractional(const LpSolution& x) const {
  return std::all_of(edges_.begin(), edges_.end(),
                     [&](const Var& v) { return !is_integer(x.at(v)); });
}

bool Path::alternating(const LpSolution& x) const {
  const Rational y = x.at(edges_[0]);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Rational& v = x.at(edges_[k]);
    if (k % 2 == 0 ? v != y : v != 1 - y) return false;
  }
  return true;
}

std::pair<Path, Path> Path::cut(std::size_t position) const {
  auto ps = positions();
  for (std::size_t m = 1; m + 1 < ps.size(); ++m) {
    if (ps[m] == position) {
      std::vector<Var> head(edges_.begin(), edges_.begin() + 2 * m);
      std::vector<Var> tail(edges_.begin() + 2 * m, edges_.end());
      return {Path(std::move(head)), Path(std::move(tail))};
    }
  }
  fail(ErrorKind::invalid_argument, "cut position is not an inner position of the path");
}

// -------------------------------------------------------------------- shifts

LpSolution shift(const Instance& instance, const LpSolution& x, const Path& path,
                 const Rational& delta) {
  LpSolution out = x;
  apply_shift(instance, out, path, delta);
  require(in_unit_range(out), ErrorKind::delta_out_of_range,
          "shift by " + format_rational(delta) + " leaves [0,1]");
  return out;
}

MergeOutcome merge_shift(const Instance& instance, const LpSolution& x, const Path& first,
                         const Path* second) {
  const Rational rate1 = first.budget_rate(instance);
  Rational scale1 = 1;
  Rational scale2 = 0;
  if (second == nullptr) {
    require(rate1 == 0, ErrorKind::invalid_argument, "a single path must have budget rate 0");
  } else {
    const Rational rate2 = second->budget_rate(instance);
    require(rate1 != 0 && rate2 != 0, ErrorKind::invalid_argument,
            "paired paths must both have nonzero budget rate");
    require(first.variable_set() != second->variable_set(), ErrorKind::identical_paths,
            "paired paths cover the same variables");
    scale1 = rate2;
    scale2 = -rate1;
  }
  require(first.fractional(x) && (second == nullptr || second->fractional(x)),
          ErrorKind::invalid_argument, "merged paths must be fractional");

  std::map<Var, Rational> rate;
  for (std::size_t k = 0; k < first.edges().size(); ++k) {
    rate[first.edges()[k]] += Path::shift_sign(k) * scale1;
  }
  if (second != nullptr) {
    for (std::size_t k = 0; k < second->edges().size(); ++k) {
      rate[second->edges()[k]] += Path::shift_sign(k) * scale2;
    }
  }
  Rational slope = 0;
  for (const auto& [v, r] : rate) slope += r * cost_weight(instance, v);
  const int dir = slope <= 0 ? 1 : -1;
  std::optional<Rational> limit;
  for (const auto& [v, r] : rate) {
    Rational dr = dir * r;
    if (dr == 0) continue;
    Rational room = dr > 0 ? Rational((1 - x.at(v)) / dr) : Rational(x.at(v) / -dr);
    if (!limit || room < *limit) limit = room;
  }
  if (!limit) breach("merged paths cancel out entirely");
  const Rational delta = dir * *limit;

  MergeOutcome out{x, delta, {}};
  apply_shift(instance, out.x, first, delta * scale1);
  if (second != nullptr) apply_shift(instance, out.x, *second, delta * scale2);

  if (!in_unit_range(out.x)) breach("merge left [0,1]");
  if (out.x.budget_use() != x.budget_use()) breach("merge changed budget use");
  if (out.x.cost() > x.cost()) breach("merge raised the objective");
  if (out.x.integral_count() <= x.integral_count()) breach("merge did not round any variable");
  for (std::size_t k = 0; k < x.values().size(); ++k) {
    if (is_integer(x.values()[k]) && x.values()[k] != out.x.values()[k]) {
      breach("merge disturbed an integral variable");
    }
  }
  if (!first.is_cycle()) out.new_crowded = merge_sorted(out.new_crowded, {first.start(), first.end()});
  if (second != nullptr && !second->is_cycle()) {
    out.new_crowded = merge_sorted(out.new_crowded, {second->start(), second->end()});
  }
  return out;
}

// -------------------------------------------------------------------- cycles

std::optional<Path> find_cycle(const LpSolution& x) {
  FractionalGraph graph(x);
  auto frac = x.fractional();
  if (frac.empty()) return std::nullopt;
  const Var first = frac.front();
  std::vector<Node> nodes{position_node(first.position), job_node(first.job)};
  std::vector<Var> edges{first};
  std::set<Var> used{first};
  std::map<Node, std::size_t> seen{{nodes[0], 0}, {nodes[1], 1}};
  for (;;) {
    const Node cur = nodes.back();
    const Var* pick = nullptr;
    for (const Var& v : graph.at(cur)) {
      if (!used.count(v)) {
        pick = &v;
        break;
      }
    }
    if (pick == nullptr) breach("fractional edge without a continuation");
    const Node next = other_end(*pick, cur);
    edges.push_back(*pick);
    used.insert(*pick);
    if (auto it = seen.find(next); it != seen.end()) {
      const std::size_t s = it->second;
      std::vector<Var> cyc(edges.begin() + static_cast<std::ptrdiff_t>(s), edges.end());
      if (nodes[s].is_job) std::rotate(cyc.begin(), cyc.begin() + 1, cyc.end());
      return Path(std::move(cyc));
    }
    seen[next] = nodes.size();
    nodes.push_back(next);
  }
}

namespace {

// Shortest cycle through fractional edge `e`, if `e` lies on one.
std::optional<Path> cycle_through(const FractionalGraph& graph, const Var& e) {
  const Node from = job_node(e.job);
  const Node goal = position_node(e.position);
  std::map<Node, std::pair<Node, Var>> parent;
  std::deque<Node> queue{from};
  std::set<Node> visited{from};
  bool found = false;
  while (!queue.empty() && !found) {
    Node cur = queue.front();
    queue.pop_front();
    for (const Var& v : graph.at(cur)) {
      if (v == e) continue;
      Node next = other_end(v, cur);
      if (visited.count(next)) continue;
      visited.insert(next);
      parent.emplace(next, std::make_pair(cur, v));
      if (next == goal) {
        found = true;
        break;
      }
      queue.push_back(next);
    }
  }
  if (!found) return std::nullopt;
  std::vector<Var> back;
  for (Node at = goal; at != from;) {
    const auto& [prev, v] = parent.at(at);
    back.push_back(v);
    at = prev;
  }
  std::vector<Var> edges{e};
  edges.insert(edges.end(), back.rbegin(), back.rend());
  return Path(std::move(edges));
}

}  // namespace

CycleElimination eliminate_cycles(const Instance& instance, const LpSolution& x) {
  CycleElimination out{x, std::nullopt, 0};
  for (;;) {
    auto frac = out.x.fractional();
    if (frac.empty()) return out;
    Path p1 = *find_cycle(out.x);
    if (p1.budget_rate(instance) == 0) {
      out.x = merge_shift(instance, out.x, p1).x;
      ++out.merges;
      continue;
    }
    auto members = p1.variable_set();
    if (members == frac) {
      if (!p1.alternating(out.x)) breach("critical cycle is not alternating");
      out.blocking = p1;
      return out;
    }
    FractionalGraph graph(out.x);
    std::optional<Path> p2;
    for (const Var& e : frac) {
      if (std::binary_search(members.begin(), members.end(), e)) continue;
      p2 = cycle_through(graph, e);
      if (p2) break;
    }
    if (!p2) breach("no second cycle although fractional edges remain off the first");
    if (p2->budget_rate(instance) == 0) {
      out.x = merge_shift(instance, out.x, *p2).x;
    } else {
      out.x = merge_shift(instance, out.x, p1, &*p2).x;
    }
    ++out.merges;
  }
}

std::size_t select_cut_position(const Path& path, std::size_t inv_eps) {
  auto inner = path.inner_positions();
  require(!inner.empty(), ErrorKind::invalid_argument, "path has no inner position");
  const std::size_t window = 2 * inv_eps + 1;
  if (inner.size() < window) return inner.front();
  auto sorted = inner;
  std::sort(sorted.begin(), sorted.end());
  sorted.resize(window);
  std::size_t seen = 0;
  for (std::size_t i : inner) {
    if (contains(sorted, i) && ++seen == inv_eps + 1) return i;
  }
  breach("cut selection ran past the path");
}

// ----------------------------------------------------------- ChargingTracker

ChargingTracker::ChargingTracker(std::size_t inv_eps, std::size_t pinned)
    : k_(inv_eps), pinned_(pinned) {}

std::vector<std::size_t> ChargingTracker::charged_set(const Path* path,
                                                      const std::vector<std::size_t>& crowded) const {
  std::vector<std::size_t> out = crowded;
  if (path != nullptr) {
    auto inner = path->inner_positions();
    std::sort(inner.begin(), inner.end());
    inner.resize(std::min(inner.size(), 2 * k_ + 1));
    out = merge_sorted(out, inner);
  }
  return out;
}

bool ChargingTracker::begin(const Path& path, const std::vector<std::size_t>& crowded) {
  charges_.clear();
  active_ = false;
  std::vector<std::size_t> pool;
  for (std::size_t i = 1; i <= pinned_; ++i) pool.push_back(i);
  for (std::size_t owner : charged_set(&path, crowded)) {
    std::vector<std::size_t> mine;
    for (auto it = pool.begin(); it != pool.end() && mine.size() < k_;) {
      if (*it < owner) {
        mine.push_back(*it);
        it = pool.erase(it);
      } else {
        ++it;
      }
    }
    if (mine.size() < k_) {
      charges_.clear();
      return false;
    }
    charges_[owner] = mine;
  }
  active_ = true;
  check(&path);
  return true;
}

void ChargingTracker::advance(const Path* path, const std::vector<std::size_t>& crowded) {
  if (!active_) return;
  const auto next = charged_set(path, crowded);
  std::vector<std::size_t> on_path;
  if (path != nullptr) {
    on_path = path->positions();
    std::sort(on_path.begin(), on_path.end());
  }
  std::vector<std::vector<std::size_t>> freed_sets;
  std::vector<std::size_t> freed_positions;
  for (auto it = charges_.begin(); it != charges_.end();) {
    if (contains(next, it->first)) {
      ++it;
      continue;
    }
    freed_sets.push_back(it->second);
    if (!contains(on_path, it->first)) freed_positions.push_back(it->first);
    it = charges_.erase(it);
  }
  for (std::size_t owner : next) {
    if (charges_.count(owner)) continue;
    bool placed = false;
    for (auto it = freed_sets.begin(); it != freed_sets.end(); ++it) {
      if (it->back() < owner) {
        charges_[owner] = *it;
        freed_sets.erase(it);
        placed = true;
        break;
      }
    }
    if (placed) continue;
    std::vector<std::size_t> mine;
    for (auto it = freed_positions.begin(); it != freed_positions.end() && mine.size() < k_;) {
      if (*it < owner) {
        mine.push_back(*it);
        it = freed_positions.erase(it);
      } else {
        ++it;
      }
    }
    if (mine.size() < k_) breach("charging map cannot cover position " + std::to_string(owner));
    charges_[owner] = mine;
  }
  check(path);
}

void ChargingTracker::check(const Path* path) const {
  std::vector<std::size_t> on_path;
  if (path != nullptr) on_path = path->positions();
  std::set<std::size_t> used;
  for (const auto& [owner, targets] : charges_) {
    if (targets.size() != k_) breach("charge set has the wrong size");
    for (std::size_t t : targets) {
      if (t >= owner || charges_.count(t) ||
          std::find(on_path.begin(), on_path.end(), t) != on_path.end() || !used.insert(t).second) {
        breach("charging map is malformed at position " + std::to_string(owner));
      }
    }
  }
}

// ------------------------------------------------------------ RepeatedCut

namespace {

void check_cut_state(const Instance& instance, const Fixation& fixation, const LpSolution& x,
                     const Path* path, const std::vector<std::size_t>& crowded) {
  Fixation f = fixation;
  f.crowded = crowded;
  if (auto v = violation(instance, f, x)) breach("cut state infeasible: " + *v);
  if (path == nullptr) return;
  if (path->variable_set() != x.fractional()) breach("remaining path is not critical");
  if (!path->fractional(x)) breach("remaining path is not fractional");
  if (!path->alternating(x)) breach("remaining path is not alternating");
  if (!contains(crowded, path->start()) || !contains(crowded, path->end())) {
    breach("remaining path ends outside the crowded positions");
  }
}

bool all_integral(const LpSolution& x, const Path& p) {
  return std::all_of(p.edges().begin(), p.edges().end(),
                     [&](const Var& v) { return is_integer(x.at(v)); });
}

}  // namespace

RepeatedCutResult repeated_cut(const Instance& instance, const Fixation& fixation,
                               const LpSolution& x, const Path& cycle, std::size_t inv_eps,
                               ChargingTracker* tracker) {
  RepeatedCutResult res{x, {cycle.start()}, std::nullopt, 0};
  Path cur = cycle;
  while (cur.budget_rate(instance) != 0) {
    check_cut_state(instance, fixation, res.x, &cur, res.crowded);
    ++res.iterations;
    if (cur.inner_positions().empty()) {
      const Var in = cur.edges()[0];
      const Var out = cur.edges()[1];
      const bool keep_tested = in.state == JobState::tested && out.state == JobState::tested;
      const Var target{in.job, std::min(cur.start(), cur.end()),
                       keep_tested ? JobState::tested : JobState::untested};
      res.x.add(in, -res.x.at(in));
      res.x.add(out, -res.x.at(out));
      res.x.add(target, 1 - res.x.at(target));
      if (in.state != out.state) res.ejected = EjectedJob{in.job, target.position};
      if (!res.x.integral()) breach("rescheduling left fractional variables");
      check_cut_state(instance, fixation, res.x, nullptr, res.crowded);
      if (tracker) tracker->advance(nullptr, res.crowded);
      return res;
    }
    const std::size_t at = select_cut_position(cur, inv_eps);
    auto [head, tail] = cur.cut(at);
    res.crowded = merge_sorted(res.crowded, {at});
    MergeOutcome m = head.budget_rate(instance) == 0   ? merge_shift(instance, res.x, head)
                     : tail.budget_rate(instance) == 0 ? merge_shift(instance, res.x, tail)
                                                       : merge_shift(instance, res.x, head, &tail);
    res.x = std::move(m.x);
    res.crowded = merge_sorted(res.crowded, m.new_crowded);
    const bool head_done = all_integral(res.x, head);
    const bool tail_done = all_integral(res.x, tail);
    if (head_done && tail_done) {
      check_cut_state(instance, fixation, res.x, nullptr, res.crowded);
      if (tracker) tracker->advance(nullptr, res.crowded);
      return res;
    }
    if (!head_done && !tail_done) breach("cut merge rounded neither side");
    cur = head_done ? tail : head;
    if (tracker) tracker->advance(&cur, res.crowded);
  }
  check_cut_state(instance, fixation, res.x, &cur, res.crowded);
  MergeOutcome m = merge_shift(instance, res.x, cur);
  res.x = std::move(m.x);
  res.crowded = merge_sorted(res.crowded, m.new_crowded);
  if (!res.x.integral()) breach("final shift left fractional variables");
  check_cut_state(instance, fixation, res.x, nullptr, res.crowded);
  if (tracker) tracker->advance(nullptr, res.crowded);
  return res;
}

// ------------------------------------------------------- integral schedules

namespace {

struct Placement {
  std::size_t position;
  JobState state;
};

std::vector<Placement> placements(const LpSolution& x) {
  if (!x.integral()) breach("expected an integral assignment");
  const std::size_t n = x.jobs();
  std::vector<std::optional<Placement>> where(n);
  for (std::size_t k = 0; k < x.values().size(); ++k) {
    if (x.values()[k] == 0) continue;
    Var v = var_at(k, n);
    if (where[v.job]) breach("job " + std::to_string(v.job) + " is placed twice");
    where[v.job] = Placement{v.position, v.state};
  }
  std::vector<Placement> out;
  for (JobId j = 0; j < n; ++j) {
    if (!where[j]) breach("job " + std::to_string(j) + " is not placed");
    out.push_back(*where[j]);
  }
  return out;
}

LpSolution from_placements(const Instance& instance, const std::vector<Placement>& place) {
  const std::size_t n = instance.size();
  std::vector<Rational> values(var_count(n), Rational(0));
  for (JobId j = 0; j < n; ++j) values[var_index({j, place[j].position, place[j].state}, n)] = 1;
  return LpSolution(instance, std::move(values));
}

}  // namespace

DecrowdResult decrowd(const Instance& instance, const LpSolution& x,
                      const std::vector<std::size_t>& crowded) {
  const std::size_t n = instance.size();
  auto place = placements(x);
  std::vector<std::size_t> load(n + 1, 0);
  for (const auto& p : place) ++load[p.position];
  for (std::size_t i = 1; i <= n; ++i) {
    bool ok = contains(crowded, i) ? load[i] <= 2 : load[i] == 1;
    if (!ok) breach("position " + std::to_string(i) + " holds " + std::to_string(load[i]) + " jobs");
  }
  std::vector<JobId> order(n);
  for (JobId j = 0; j < n; ++j) order[j] = j;
  std::vector<Rational> time(n);
  for (JobId j = 0; j < n; ++j) time[j] = instance.realized(j, place[j].state == JobState::tested);
  std::sort(order.begin(), order.end(), [&](JobId a, JobId b) {
    if (place[a].position != place[b].position) return place[a].position < place[b].position;
    if (time[a] != time[b]) return time[a] < time[b];
    return a < b;
  });
  DecrowdResult out{x, std::vector<std::size_t>(n), std::vector<std::size_t>(n), Rational(1)};
  auto moved = place;
  for (std::size_t rank = 0; rank < n; ++rank) {
    JobId j = order[rank];
    out.before[j] = place[j].position;
    out.after[j] = rank + 1;
    moved[j].position = rank + 1;
    Rational ratio(out.after[j], out.before[j]);
    if (ratio > out.max_ratio) out.max_ratio = ratio;
  }
  out.x = from_placements(instance, moved);
  return out;
}

LpSolution reinsert_untested(const Instance& instance, const LpSolution& x, JobId job,
                             std::size_t position) {
  auto place = placements(x);
  const std::size_t from = place.at(job).position;
  require(position >= 1 && position <= from, ErrorKind::invalid_argument,
          "a job can only be reinserted at or below its position");
  for (auto& p : place) {
    if (p.position >= position && p.position < from) ++p.position;
  }
  place[job] = Placement{position, JobState::untested};
  return from_placements(instance, place);
}

Schedule to_schedule(const Instance& instance, const LpSolution& x) {
  const std::size_t n = instance.size();
  auto place = placements(x);
  Schedule s;
  s.sequence.assign(n, n);
  for (JobId j = 0; j < n; ++j) {
    std::size_t f = to_forward(place[j].position, n);
    if (s.sequence[f - 1] != n) breach("two jobs share a position");
    s.sequence[f - 1] = j;
    if (place[j].state == JobState::tested) s.tested.push_back(j);
  }
  return s;
}

// ---------------------------------------------------------------- fixations

std::size_t inverse_epsilon(const Rational& epsilon) {
  require(epsilon > 0 && epsilon <= 1, ErrorKind::invalid_epsilon, "epsilon must lie in (0, 1]");
  return ceil_of(1 / epsilon).convert_to<std::size_t>();
}

std::size_t pinned_positions(std::size_t n, std::size_t inv_eps) {
  return std::min(n, (2 * inv_eps + 1) * inv_eps);
}

Rational ptas_bound(std::size_t inv_eps) {
  const Rational m((2 * inv_eps + 1) * inv_eps);
  return (m + 1) / m * ((1 + Rational(1, inv_eps)) + 2 / m);
}

FixationEnumerator::FixationEnumerator(const Instance& instance, std::size_t inv_eps)
    : instance_(instance),
      slots_(pinned_positions(instance.size(), inv_eps)),
      digit_(slots_, 0) {
  require(instance.lower_known(), ErrorKind::missing_lower_time, "fixations need lower times");
}

bool FixationEnumerator::advance() {
  const std::size_t base = 2 * instance_.size();
  for (std::size_t s = slots_; s-- > 0;) {
    if (++digit_[s] < base) return true;
    digit_[s] = 0;
  }
  return false;
}

bool FixationEnumerator::distinct() const {
  std::vector<bool> seen(instance_.size(), false);
  for (std::size_t d : digit_) {
    if (seen[d / 2]) return false;
    seen[d / 2] = true;
  }
  return true;
}

std::optional<Fixation> FixationEnumerator::next() {
  while (!done_) {
    if (!started_) {
      started_ = true;
    } else if (!advance()) {
      done_ = true;
      break;
    }
    if (!distinct()) continue;
    Fixation f;
    std::vector<bool> pinned(instance_.size(), false);
    Rational spent = 0;
    std::optional<Rational> smallest;
    for (std::size_t s = 0; s < slots_; ++s) {
      Var v{digit_[s] / 2, s + 1, digit_[s] % 2 == 0 ? JobState::tested : JobState::untested};
      f.fixed_vars.push_back(v);
      pinned[v.job] = true;
      if (v.state == JobState::tested) spent += instance_.cost(v.job);
      Rational t = instance_.realized(v.job, v.state == JobState::tested);
      if (!smallest || t < *smallest) smallest = t;
    }
    if (spent > instance_.budget()) continue;
    for (JobId j = 0; j < instance_.size(); ++j) {
      if (!pinned[j] && smallest && instance_.upper(j) > *smallest) {
        f.tested_jobs.push_back(j);
        spent += instance_.cost(j);
      }
    }
    if (spent > instance_.budget()) continue;
    return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- driver

namespace {

using PinKey = std::vector<std::pair<JobId, JobState>>;

PinKey pin_key(const Fixation& f) {
  PinKey key;
  for (const Var& v : f.fixed_vars) key.emplace_back(v.job, v.state);
  std::sort(key.begin(), key.end());
  return key;
}

void emit(const PtasOptions& options, const nlohmann::json& event) {
  if (options.trace) options.trace(event.dump());
}

nlohmann::json fixation_json(const Fixation& f) {
  nlohmann::json pins = nlohmann::json::array();
  for (const Var& v : f.fixed_vars) {
    pins.push_back({{"job", v.job + 1}, {"position", v.position}, {"state", to_string(v.state)}});
  }
  nlohmann::json tested = nlohmann::json::array();
  for (JobId j : f.tested_jobs) tested.push_back(j + 1);
  return {{"pins", pins}, {"tested_jobs", tested}};
}

nlohmann::json solution_json(const LpSolution& x) {
  nlohmann::json nz = nlohmann::json::array();
  for (std::size_t k = 0; k < x.values().size(); ++k) {
    if (x.values()[k] == 0) continue;
    Var v = var_at(k, x.jobs());
    nz.push_back({{"job", v.job + 1}, {"position", v.position}, {"state", to_string(v.state)},
                  {"value", json_rational(x.values()[k])}});
  }
  return {{"objective", json_rational(x.cost())}, {"budget_use", json_rational(x.budget_use())},
          {"nonzero", nz}};
}

void expect_valid(const Instance& instance, const Fixation& f, const LpSolution& x,
                  const std::string& stage, PtasStats& stats) {
  ++stats.invariant_checks;
  x.verify_caches();
  if (auto v = violation(instance, f, x)) breach(stage + ": " + *v);
}

// Runs relaxation and rounding for one fixation; returns the placement of the
// jobs at positions beyond the pinned prefix.
std::optional<std::vector<Var>> round_fixation(const Instance& instance, const Fixation& f,
                                               std::size_t inv_eps, std::size_t pinned,
                                               const PtasOptions& options, PtasStats& stats) {
  LpResult lp = solve(build_lp(instance, f));
  ++stats.lp_solves;
  stats.lp_pivots += lp.pivots;
  if (lp.status != LpStatus::optimal) {
    ++stats.lp_infeasible;
    emit(options, {{"event", "lp"}, {"fixation", fixation_json(f)}, {"status", "infeasible"}});
    return std::nullopt;
  }
  LpSolution x(instance, lp.x);
  expect_valid(instance, f, x, "relaxation", stats);
  emit(options, {{"event", "lp"}, {"fixation", fixation_json(f)}, {"status", "optimal"},
                 {"pivots", lp.pivots}, {"solution", solution_json(x)}});

  CycleElimination ce = eliminate_cycles(instance, x);
  stats.merges += ce.merges;
  ++stats.invariant_checks;
  if (ce.x.cost() > x.cost()) breach("cycle elimination raised the objective");
  expect_valid(instance, f, ce.x, "cycle elimination", stats);
  emit(options, {{"event", "cycles"}, {"merges", ce.merges}, {"blocking", ce.blocking.has_value()},
                 {"solution", solution_json(ce.x)}});

  LpSolution cur = ce.x;
  std::vector<std::size_t> crowded;
  std::optional<EjectedJob> ejected;
  if (ce.blocking) {
    ++stats.blocking_cycles;
    std::optional<ChargingTracker> tracker;
    if (options.track_charging) {
      tracker.emplace(inv_eps, pinned);
      if (tracker->begin(*ce.blocking, {ce.blocking->start()})) {
        ++stats.charging_started;
      } else {
        ++stats.charging_unavailable;
      }
    }
    RepeatedCutResult rc =
        repeated_cut(instance, f, cur, *ce.blocking, inv_eps, tracker ? &*tracker : nullptr);
    stats.cut_iterations += rc.iterations;
    stats.invariant_checks += rc.iterations;
    cur = rc.x;
    crowded = rc.crowded;
    ejected = rc.ejected;
    emit(options, {{"event", "repeated_cut"}, {"iterations", rc.iterations},
                   {"crowded", crowded}, {"ejected", ejected ? nlohmann::json(ejected->job + 1) : nlohmann::json()},
                   {"solution", solution_json(cur)}});
  }
  if (!crowded.empty()) {
    DecrowdResult dr = decrowd(instance, cur, crowded);
    ++stats.invariant_checks;
    if (dr.max_ratio > 1 + Rational(1, inv_eps)) {
      breach("decrowding moved a job by factor " + format_rational(dr.max_ratio));
    }
    if (dr.max_ratio > stats.max_decrowd_ratio) stats.max_decrowd_ratio = dr.max_ratio;
    cur = dr.x;
    emit(options, {{"event", "decrowd"}, {"max_ratio", json_rational(dr.max_ratio)}});
  }
  if (ejected) {
    ++stats.ejections;
    cur = reinsert_untested(instance, cur, ejected->job, pinned + 1);
    emit(options, {{"event", "reinsert"}, {"job", ejected->job + 1}, {"position", pinned + 1}});
  }
  Fixation plain = f;
  plain.crowded.clear();
  expect_valid(instance, plain, cur, "rounded assignment", stats);
  if (!cur.integral()) breach("rounded assignment is fractional");

  std::vector<Var> rest;
  for (std::size_t k = 0; k < cur.values().size(); ++k) {
    Var v = var_at(k, instance.size());
    if (cur.values()[k] == 1 && v.position > pinned) rest.push_back(v);
  }
  return rest;
}

}  // namespace

PtasResult ptas_solve(const Instance& instance, const Rational& epsilon, const PtasOptions& options) {
  require(instance.lower_known(), ErrorKind::missing_lower_time, "the offline scheme needs lower times");
  const std::size_t n = instance.size();
  const std::size_t k = inverse_epsilon(epsilon);
  const std::size_t pinned = pinned_positions(n, k);

  PtasResult result;
  result.inv_eps = k;
  result.pinned = pinned;
  std::map<PinKey, std::optional<std::vector<Var>>> memo;
  bool have = false;

  FixationEnumerator fixations(instance, k);
  while (auto f = fixations.next()) {
    ++result.stats.fixations;
    PinKey key = pin_key(*f);
    auto it = memo.find(key);
    if (it == memo.end()) {
      it = memo.emplace(key, round_fixation(instance, *f, k, pinned, options, result.stats)).first;
    }
    if (!it->second) continue;

    std::vector<Rational> values(var_count(n), Rational(0));
    for (const Var& v : f->fixed_vars) values[var_index(v, n)] = 1;
    for (const Var& v : *it->second) values[var_index(v, n)] = 1;
    LpSolution x(instance, std::move(values));
    Schedule rounded = to_schedule(instance, x);
    validate(instance, rounded);
    Schedule spt = spt_schedule(instance, rounded.tested);
    Rational value = total_completion_time(instance, spt);
    if (!have || value < result.value) {
      have = true;
      result.value = value;
      result.rounded_cost = x.cost();
      result.schedule = spt;
      result.fixation = *f;
    }
  }
  if (!have) breach("no fixation produced a schedule");
  emit(options, {{"event", "result"}, {"value", json_rational(result.value)},
                 {"rounded_cost", json_rational(result.rounded_cost)},
                 {"fixation", fixation_json(result.fixation)}});
  return result;
}

}  // namespace sltb
