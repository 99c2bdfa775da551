#include "sltb/tct_dp.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

namespace sltb {

namespace {

Rational tct_of(const Instance& instance, const JobSet& tested) {
  auto in = membership(tested, instance.size());
  std::vector<Rational> t;
  for (JobId j = 0; j < instance.size(); ++j) t.push_back(in[j] ? Rational(0) : instance.upper(j));
  std::sort(t.begin(), t.end());
  Rational total = 0;
  for (std::size_t k = 0; k < t.size(); ++k) total += t[k] * Rational(t.size() - k);
  return total;
}

bool better(const Solution& a, const Solution& b) {
  return a.value < b.value || (a.value == b.value && a.tested < b.tested);
}

}  // namespace

TctDpTable::TctDpTable(const Instance& instance) : budget_(instance.budget()) {
  const std::size_t n = instance.size();
  order_.resize(n);
  std::iota(order_.begin(), order_.end(), JobId{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [&](JobId a, JobId b) { return instance.upper(a) > instance.upper(b); });

  table_.assign(n + 1, {});
  table_[0].assign(1, {Point{Rational(0), Rational(0), 0, false}});
  for (std::size_t j = 0; j < n; ++j) {
    const Rational& p = instance.upper(order_[j]);
    const Rational& c = instance.cost(order_[j]);
    table_[j + 1].assign(j + 2, {});
    for (std::size_t k = 0; k <= j + 1; ++k) {
      std::vector<Point> cand;
      if (k >= 1) {
        const auto& from = table_[j][k - 1];
        for (std::uint32_t i = 0; i < from.size(); ++i) {
          cand.push_back(Point{from[i].tct, from[i].cost + c, i, true});
        }
      }
      if (k <= j) {
        // the untested job sits at reverse position (untested jobs among the prefix)
        Rational weight = p * Rational(j + 1 - k);
        const auto& from = table_[j][k];
        for (std::uint32_t i = 0; i < from.size(); ++i) {
          cand.push_back(Point{from[i].tct + weight, from[i].cost, i, false});
        }
      }
      // Prefer the tested branch on exact ties so larger jobs come out tested.
      std::stable_sort(cand.begin(), cand.end(), [](const Point& a, const Point& b) {
        if (a.tct != b.tct) return a.tct < b.tct;
        return a.cost < b.cost;
      });
      auto& out = table_[j + 1][k];
      for (auto& pt : cand) {
        if (out.empty() || pt.cost < out.back().cost) out.push_back(std::move(pt));
      }
    }
  }
}

std::optional<Rational> TctDpTable::entry(const Rational& bound, std::size_t prefix,
                                          std::size_t tested) const {
  require(prefix <= size() && tested <= prefix, ErrorKind::invalid_argument,
          "table index out of range");
  std::optional<Rational> best;
  for (const auto& pt : frontier(prefix, tested)) {
    if (pt.tct > bound) break;
    best = pt.cost;  // costs decrease along the frontier
  }
  return best;
}

Solution TctDpTable::best() const {
  const std::size_t n = size();
  std::optional<std::pair<std::size_t, std::size_t>> pick;  // (k, index)
  for (std::size_t k = 0; k <= n; ++k) {
    const auto& f = frontier(n, k);
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].cost > budget_) continue;
      if (!pick) {
        pick = {k, i};
      } else {
        const Point& cur = frontier(n, pick->first)[pick->second];
        if (f[i].tct < cur.tct || (f[i].tct == cur.tct && f[i].cost < cur.cost)) pick = {k, i};
      }
      break;
    }
  }
  require(pick.has_value(), ErrorKind::invariant_breach, "testing nothing must be feasible");
  JobSet tested;
  std::size_t k = pick->first;
  std::size_t idx = pick->second;
  for (std::size_t prefix = n; prefix > 0; --prefix) {
    const Point& pt = frontier(prefix, k)[idx];
    idx = pt.pred;
    if (pt.tested) {
      tested.push_back(order_[prefix - 1]);
      --k;
    }
  }
  tested = normalize(tested);
  return Solution{tested, frontier(n, pick->first)[pick->second].tct};
}

std::size_t TctDpTable::frontier_points() const {
  std::size_t total = 0;
  for (const auto& row : table_) {
    for (const auto& f : row) total += f.size();
  }
  return total;
}

void require_zero_lower(const Instance& instance) {
  for (JobId j = 0; j < instance.size(); ++j) {
    require(instance.lower(j).has_value(), ErrorKind::missing_lower_time,
            "job " + std::to_string(j) + " has no lower time");
    require(*instance.lower(j) == 0, ErrorKind::nonzero_lower_time,
            "job " + std::to_string(j) + " has a nonzero lower time");
  }
}

Solution tct_dp_exact(const Instance& instance) {
  require_zero_lower(instance);
  for (JobId j = 0; j < instance.size(); ++j) {
    require(is_integer(instance.upper(j)), ErrorKind::noninteger_upper_time,
            "job " + std::to_string(j) + " has a fractional upper time");
  }
  return TctDpTable(instance).best();
}

Rational tct_fptas_unit(const Rational& guess, const Rational& epsilon, std::size_t n) {
  require(guess > 0 && epsilon > 0 && n > 0, ErrorKind::invalid_argument, "scaling unit needs positive inputs");
  return guess * epsilon / Rational(n * n);
}

Rational round_up_to(const Rational& value, const Rational& unit) {
  return Rational(ceil_of(value / unit)) * unit;
}

Solution tct_fptas(const Instance& instance, const Rational& epsilon) {
  require(epsilon > 0, ErrorKind::invalid_epsilon, "epsilon must be positive");
  require_zero_lower(instance);
  const std::size_t n = instance.size();
  std::set<Rational> guesses;
  for (const auto& p : instance.uppers()) {
    if (p > 0) guesses.insert(p);
  }
  if (guesses.empty()) return Solution{{}, Rational(0)};

  std::optional<Solution> best;
  for (const Rational& guess : guesses) {
    const Rational unit = tct_fptas_unit(guess, epsilon, n);
    std::vector<Rational> scaled;
    for (const auto& p : instance.uppers()) scaled.push_back(Rational(ceil_of(p / unit)));
    Instance rounded = Instance::with_lower(scaled, std::vector<Rational>(n, Rational(0)),
                                            instance.costs(), instance.budget());
    Solution s = TctDpTable(rounded).best();
    s.value = tct_of(instance, s.tested);
    if (!best || better(s, *best)) best = std::move(s);
  }
  return *best;
}

Solution tct_uniform_greedy(const Instance& instance, std::size_t k) {
  require_zero_lower(instance);
  const std::size_t n = instance.size();
  std::vector<JobId> order(n);
  std::iota(order.begin(), order.end(), JobId{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](JobId a, JobId b) { return instance.upper(a) > instance.upper(b); });
  order.resize(std::min(k, n));
  JobSet tested = normalize(order);
  return Solution{tested, tct_of(instance, tested)};
}

EqualLowerReduction reduce_equal_low(const Instance& instance) {
  require(instance.lower_known(), ErrorKind::missing_lower_time, "lower times required");
  const Rational v = *instance.lower(0);
  for (JobId j = 1; j < instance.size(); ++j) {
    require(*instance.lower(j) == v, ErrorKind::unequal_lower_times,
            "job " + std::to_string(j) + " has a different lower time");
  }
  const std::size_t n = instance.size();
  std::vector<Rational> upper;
  for (const auto& p : instance.uppers()) upper.push_back(p - v);
  Instance reduced = Instance::with_lower(upper, std::vector<Rational>(n, Rational(0)),
                                          instance.costs(), instance.budget());
  return EqualLowerReduction{reduced, v * Rational(n * (n + 1) / 2), v};
}

}  // namespace sltb
