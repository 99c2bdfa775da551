#include "sltb/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include "sltb/io.hpp"
#include "sltb/makespan.hpp"
#include "sltb/oracle.hpp"
#include "sltb/ptas.hpp"
#include "sltb/tct_dp.hpp"

namespace sltb {

namespace {

bool unit_costs(const Instance& instance) {
  return std::all_of(instance.costs().begin(), instance.costs().end(),
                     [](const Rational& c) { return c == 1; });
}

std::size_t greedy_count(const BenchAlgorithm& algorithm, const Instance& instance) {
  if (algorithm.k) return *algorithm.k;
  return floor_of(instance.budget()).convert_to<std::size_t>();
}

Rational epsilon_of(const BenchAlgorithm& algorithm) {
  return algorithm.epsilon.value_or(Rational(1, 2));
}

// Applies the equal-lower shift where a zero-lower solver needs it.
Solution solve_zero_lower(const Instance& instance, const std::function<Solution(const Instance&)>& run) {
  if (instance.lower_all_zero()) return run(instance);
  EqualLowerReduction red = reduce_equal_low(instance);
  Solution s = run(red.reduced);
  s.value += red.offset;
  return s;
}

Solution run_algorithm(const BenchAlgorithm& a, const Instance& instance) {
  const Rational eps = epsilon_of(a);
  if (a.name == "tct-dp") return solve_zero_lower(instance, [](const Instance& i) { return tct_dp_exact(i); });
  if (a.name == "tct-fptas") {
    return solve_zero_lower(instance, [&](const Instance& i) { return tct_fptas(i, eps); });
  }
  if (a.name == "tct-greedy") {
    std::size_t k = greedy_count(a, instance);
    return solve_zero_lower(instance, [&](const Instance& i) { return tct_uniform_greedy(i, k); });
  }
  if (a.name == "tct-ptas") {
    PtasResult r = ptas_solve(instance, a.epsilon.value_or(Rational(1)));
    return Solution{r.schedule.tested, r.value};
  }
  if (a.name == "makespan-dp") return makespan_dp_exact(instance);
  if (a.name == "makespan-fptas") return makespan_fptas(instance, eps);
  if (a.name == "makespan-greedy") return makespan_uniform_greedy(instance, greedy_count(a, instance));
  fail(ErrorKind::invalid_argument, "unknown algorithm '" + a.name + "'");
}

}  // namespace

Objective objective_of(const BenchAlgorithm& algorithm) {
  return algorithm.name.rfind("makespan", 0) == 0 ? Objective::makespan : Objective::tct;
}

std::optional<Rational> guarantee(const BenchAlgorithm& a, const Instance& instance) {
  if (a.name == "tct-dp" || a.name == "makespan-dp") return Rational(1);
  if (a.name == "tct-fptas" || a.name == "makespan-fptas") return 1 + epsilon_of(a);
  if (a.name == "tct-ptas") return ptas_bound(inverse_epsilon(a.epsilon.value_or(Rational(1))));
  if ((a.name == "tct-greedy" || a.name == "makespan-greedy") && unit_costs(instance) && !a.k) {
    return Rational(1);
  }
  return std::nullopt;
}

BenchConfig bench_config_from_json(const nlohmann::json& doc) {
  BenchConfig c;
  try {
    if (doc.contains("instances")) {
      const auto& g = doc.at("instances");
      c.count = g.value("count", c.count);
      c.n_min = g.value("n_min", c.n_min);
      c.n_max = g.value("n_max", c.n_max);
      c.seed = g.value("seed", c.seed);
      c.generator.p_max = g.value("p_max", c.generator.p_max);
      c.generator.cost_max = g.value("cost_max", c.generator.cost_max);
      c.generator.integer_times = g.value("integer_times", c.generator.integer_times);
      c.generator.unit_costs = g.value("unit_costs", c.generator.unit_costs);
      if (g.contains("lower")) c.generator.lower = parse_lower_model(g.at("lower").get<std::string>());
      if (g.contains("lower_fraction")) c.generator.lower_fraction = rational_from_json(g.at("lower_fraction"));
      if (g.contains("budget_fraction")) c.generator.budget_fraction = rational_from_json(g.at("budget_fraction"));
    }
    c.threads = doc.value("threads", c.threads);
    for (const auto& a : doc.value("algorithms", nlohmann::json::array())) {
      BenchAlgorithm alg;
      alg.name = a.at("name").get<std::string>();
      if (a.contains("epsilon")) alg.epsilon = rational_from_json(a.at("epsilon"));
      if (a.contains("k")) alg.k = a.at("k").get<std::size_t>();
      c.algorithms.push_back(alg);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, e.what());
  }
  require(c.n_min >= 1 && c.n_min <= c.n_max, ErrorKind::invalid_argument, "bad n range");
  return c;
}

std::vector<BenchRow> run_bench(const BenchConfig& input) {
  BenchConfig config = input;
  std::stable_sort(config.algorithms.begin(), config.algorithms.end(),
                   [](const BenchAlgorithm& x, const BenchAlgorithm& y) { return x.name < y.name; });
  const std::size_t per = config.algorithms.size();
  std::vector<BenchRow> rows(config.count * per);
  if (per == 0) return rows;
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t i = next++; i < config.count; i = next++) {
      GeneratorSpec spec = config.generator;
      spec.seed = config.seed + i;
      std::mt19937_64 size_rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
      spec.n = std::uniform_int_distribution<std::size_t>(config.n_min, config.n_max)(size_rng);
      Instance instance = generate(spec);
      std::map<Objective, Rational> oracle;
      for (std::size_t a = 0; a < per; ++a) {
        const BenchAlgorithm& alg = config.algorithms[a];
        BenchRow& row = rows[i * per + a];
        row.seed = spec.seed;
        row.algo = alg.name;
        row.objective = objective_of(alg);
        row.n = instance.size();
        try {
          if (!oracle.count(row.objective)) {
            oracle[row.objective] = exact_solve(instance, row.objective).best_value;
          }
          row.oracle = oracle[row.objective];
          auto start = std::chrono::steady_clock::now();
          Solution s = run_algorithm(alg, instance);
          row.micros = std::chrono::duration_cast<std::chrono::microseconds>(
                           std::chrono::steady_clock::now() - start)
                           .count();
          row.value = s.value;
          if (row.oracle != 0) row.ratio = s.value / row.oracle;
          row.bound = guarantee(alg, instance);
          bool below_opt = s.value < row.oracle;
          bool over = row.bound && (row.ratio ? *row.ratio > *row.bound : s.value != 0);
          row.violation = below_opt || over;
        } catch (const Error& e) {
          row.error = e.what();
          row.violation = e.kind() == ErrorKind::invariant_breach;
        }
      }
    }
  };
  unsigned threads = std::max(1u, config.threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return rows;
}

std::string bench_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream out;
  out << "seed,algo,objective,value,oracle,ratio,micros\n";
  for (const auto& r : rows) {
    out << r.seed << ',' << r.algo << ',' << to_string(r.objective) << ','
        << (r.value ? format_rational(*r.value) : std::string("error")) << ','
        << format_rational(r.oracle) << ',' << (r.ratio ? format_rational(*r.ratio) : std::string()) << ','
        << r.micros << '\n';
  }
  return out.str();
}

std::string bench_table(const std::vector<BenchRow>& rows) {
  struct Summary {
    std::size_t runs = 0;
    std::size_t failures = 0;
    double worst = 1;
    double sum = 0;
    std::size_t rated = 0;
    long long micros = 0;
  };
  std::map<std::string, Summary> by_algo;
  std::vector<std::string> order;
  for (const auto& r : rows) {
    if (!by_algo.count(r.algo)) order.push_back(r.algo);
    Summary& s = by_algo[r.algo];
    ++s.runs;
    s.failures += r.violation || !r.error.empty();
    s.micros += r.micros;
    if (r.ratio) {
      double v = to_double(*r.ratio);
      s.worst = std::max(s.worst, v);
      s.sum += v;
      ++s.rated;
    }
  }
  std::ostringstream out;
  out << std::left << std::setw(18) << "algo" << std::right << std::setw(6) << "runs" << std::setw(10)
      << "worst" << std::setw(10) << "mean" << std::setw(12) << "mean_us" << std::setw(10) << "failed"
      << '\n';
  out << std::fixed << std::setprecision(4);
  for (const auto& name : order) {
    const Summary& s = by_algo[name];
    out << std::left << std::setw(18) << name << std::right << std::setw(6) << s.runs << std::setw(10)
        << s.worst << std::setw(10) << (s.rated ? s.sum / double(s.rated) : 1.0) << std::setw(12)
        << (s.runs ? s.micros / static_cast<long long>(s.runs) : 0) << std::setw(10) << s.failures
        << '\n';
  }
  return out.str();
}

}  // namespace sltb
