// Command-line front end: gen, solve, oracle, oblivious, reduce, bench.
// Every document on stdout is JSON (or CSV for bench); job ids are 1-based.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sltb/bench.hpp"
#include "sltb/generator.hpp"
#include "sltb/io.hpp"
#include "sltb/makespan.hpp"
#include "sltb/oblivious.hpp"
#include "sltb/oracle.hpp"
#include "sltb/ptas.hpp"
#include "sltb/reductions.hpp"
#include "sltb/tct_dp.hpp"

using nlohmann::json;
using namespace sltb;

namespace {

bool g_float = false;

// Rewrites "num/den" strings as numbers when --float is set.
json display(const json& doc) {
  if (!g_float) return doc;
  if (doc.is_object()) {
    json out = json::object();
    for (auto it = doc.begin(); it != doc.end(); ++it) out[it.key()] = display(it.value());
    return out;
  }
  if (doc.is_array()) {
    json out = json::array();
    for (const auto& v : doc) out.push_back(display(v));
    return out;
  }
  if (doc.is_string()) {
    const auto& s = doc.get_ref<const std::string&>();
    if (s.find('/') != std::string::npos) {
      try {
        return to_double(parse_rational(s));
      } catch (const Error&) {
      }
    }
  }
  return doc;
}

void emit(const json& doc) { std::cout << display(doc).dump() << '\n'; }

Instance load_instance(const std::string& path) {
  if (path == "-") {
    json doc;
    try {
      doc = json::parse(std::cin);
    } catch (const json::exception& e) {
      fail(ErrorKind::parse_error, e.what());
    }
    return instance_from_json(doc);
  }
  return read_instance_file(path);
}

json sequence_json(const std::vector<JobId>& sequence) {
  json out = json::array();
  for (JobId j : sequence) out.push_back(j + 1);
  return out;
}

json solution_json(const Instance& instance, Objective objective, const std::string& algo,
                   const Solution& s) {
  Schedule schedule = spt_schedule(instance, s.tested);
  return json{{"objective", std::string(to_string(objective))},
              {"algo", algo},
              {"tested", job_set_to_json(s.tested)},
              {"sequence", sequence_json(schedule.sequence)},
              {"cost", rational_to_json(set_cost(instance, s.tested))},
              {"value", rational_to_json(s.value)}};
}

// Runs a solver that needs zero lower times, shifting equal lower times away first.
Solution with_zero_lower(const Instance& instance, const std::function<Solution(const Instance&)>& run) {
  if (instance.lower_all_zero()) return run(instance);
  EqualLowerReduction red = reduce_equal_low(instance);
  Solution s = run(red.reduced);
  return Solution{s.tested, tested_set_value(instance, s.tested, Objective::tct)};
}

std::size_t default_k(const Instance& instance, const std::optional<std::size_t>& k) {
  if (k) return *k;
  bool unit = std::all_of(instance.costs().begin(), instance.costs().end(),
                          [](const Rational& c) { return c == 1; });
  require(unit, ErrorKind::invalid_argument, "greedy treats every cost as 1; pass --k for other costs");
  return floor_of(instance.budget()).convert_to<std::size_t>();
}

struct SolveArgs {
  std::string objective = "tct";
  std::string algo = "dp";
  std::string epsilon = "1/2";
  std::optional<std::size_t> k;
  bool trace = false;
  std::string input = "-";
};

int run_solve(const SolveArgs& a) {
  Instance instance = load_instance(a.input);
  Objective objective = parse_objective(a.objective);
  Rational eps = parse_rational(a.epsilon);
  if (objective == Objective::makespan) {
    Solution s;
    if (a.algo == "dp") {
      s = makespan_dp_exact(instance);
    } else if (a.algo == "fptas") {
      s = makespan_fptas(instance, eps);
    } else if (a.algo == "greedy") {
      s = makespan_uniform_greedy(instance, default_k(instance, a.k));
    } else {
      fail(ErrorKind::invalid_argument, "makespan algorithms are dp, fptas and greedy");
    }
    emit(solution_json(instance, objective, a.algo, s));
    return 0;
  }
  if (a.algo == "ptas") {
    PtasOptions options;
    if (a.trace) options.trace = [](const std::string& line) { std::cerr << line << '\n'; };
    PtasResult r = ptas_solve(instance, eps, options);
    json doc = solution_json(instance, objective, a.algo, Solution{r.schedule.tested, r.value});
    doc["sequence"] = sequence_json(r.schedule.sequence);
    doc["rounded_value"] = rational_to_json(r.rounded_cost);
    doc["inverse_epsilon"] = r.inv_eps;
    doc["pinned_positions"] = r.pinned;
    doc["bound"] = rational_to_json(ptas_bound(r.inv_eps));
    doc["stats"] = json{{"fixations", r.stats.fixations},
                        {"lp_solves", r.stats.lp_solves},
                        {"lp_infeasible", r.stats.lp_infeasible},
                        {"lp_pivots", r.stats.lp_pivots},
                        {"merges", r.stats.merges},
                        {"blocking_cycles", r.stats.blocking_cycles},
                        {"cut_iterations", r.stats.cut_iterations},
                        {"ejections", r.stats.ejections},
                        {"invariant_checks", r.stats.invariant_checks},
                        {"max_decrowd_ratio", rational_to_json(r.stats.max_decrowd_ratio)}};
    emit(doc);
    return 0;
  }
  Solution s;
  if (a.algo == "dp") {
    s = with_zero_lower(instance, [](const Instance& i) { return tct_dp_exact(i); });
  } else if (a.algo == "fptas") {
    s = with_zero_lower(instance, [&](const Instance& i) { return tct_fptas(i, eps); });
  } else if (a.algo == "greedy") {
    std::size_t k = default_k(instance, a.k);
    s = with_zero_lower(instance, [&](const Instance& i) { return tct_uniform_greedy(i, k); });
  } else {
    fail(ErrorKind::invalid_argument, "tct algorithms are dp, fptas, greedy and ptas");
  }
  emit(solution_json(instance, objective, a.algo, s));
  return 0;
}

struct GenArgs {
  GeneratorSpec spec;
  std::string lower = "uniform";
  std::string lower_fraction = "1";
  std::string budget_fraction = "1/2";
  bool quarter = false;
};

int run_gen(GenArgs a) {
  a.spec.lower = parse_lower_model(a.lower);
  a.spec.lower_fraction = parse_rational(a.lower_fraction);
  a.spec.budget_fraction = parse_rational(a.budget_fraction);
  a.spec.integer_times = !a.quarter;
  emit(instance_to_json(generate(a.spec)));
  return 0;
}

int run_oracle(const std::string& objective, const std::string& input) {
  Instance instance = load_instance(input);
  Objective obj = parse_objective(objective);
  OracleResult r = exact_solve(instance, obj);
  json doc = solution_json(instance, obj, "oracle", Solution{r.best_tested, r.best_value});
  doc["subsets_examined"] = r.subsets_examined;
  emit(doc);
  return 0;
}

struct ObliviousArgs {
  std::string objective = "tct";
  std::string epsilon = "1/2";
  std::string adversary = "worst";
  std::string hidden;
  std::string input;
  std::size_t seeds = 0;
  std::uint64_t seed = 1;
  std::size_t n = 6;
  std::size_t hard = 0;
  std::string opt = "oracle";
};

std::vector<Rational> read_hidden(const std::string& path) {
  json doc = read_json_file(path);
  if (doc.is_object()) doc = doc.at("p_low");
  require(doc.is_array(), ErrorKind::parse_error, "hidden lower times must be a JSON array");
  std::vector<Rational> out;
  for (const auto& v : doc) out.push_back(rational_from_json(v));
  return out;
}

int run_oblivious(const ObliviousArgs& a) {
  Objective objective = parse_objective(a.objective);
  Rational eps = parse_rational(a.epsilon);
  SimulationOptions options;
  if (a.adversary == "worst") {
    options.adversary = AdversaryKind::worst_case;
  } else if (a.adversary == "fixed") {
    options.adversary = AdversaryKind::fixed_vector;
  } else {
    fail(ErrorKind::invalid_argument, "adversary must be worst or fixed");
  }
  if (a.opt == "oracle") {
    options.opt_mode = OptMode::oracle;
  } else if (a.opt == "fptas") {
    options.opt_mode = OptMode::fptas;
  } else {
    fail(ErrorKind::invalid_argument, "opt must be oracle or fptas");
  }
  std::optional<std::vector<Rational>> hidden_file;
  if (!a.hidden.empty()) hidden_file = read_hidden(a.hidden);

  // (visible instance, hidden lower times for the fixed adversary, label)
  struct Run {
    Instance instance;
    std::optional<std::vector<Rational>> hidden;
    json label;
  };
  std::vector<Run> runs;
  auto known_lowers = [](const Instance& i) -> std::optional<std::vector<Rational>> {
    if (!i.lower_known()) return std::nullopt;
    std::vector<Rational> out;
    for (const auto& l : i.lowers()) out.push_back(*l);
    return out;
  };
  if (a.hard) {
    runs.push_back({hard_instance(a.hard).instance(), hidden_file, json{{"hard", a.hard}}});
  } else if (!a.input.empty()) {
    Instance i = load_instance(a.input);
    runs.push_back({i, hidden_file ? hidden_file : known_lowers(i), json{{"input", a.input}}});
  } else {
    require(a.seeds >= 1, ErrorKind::invalid_argument, "give --input, --hard or --seeds");
    for (std::size_t s = 0; s < a.seeds; ++s) {
      GeneratorSpec spec;
      spec.n = a.n;
      spec.seed = a.seed + s;
      spec.lower = LowerModel::uniform;
      Instance i = generate(spec);
      runs.push_back({i, hidden_file ? hidden_file : known_lowers(i), json{{"seed", spec.seed}}});
    }
  }

  Rational bound = oblivious_bound(objective, eps);
  std::optional<Rational> worst;
  Rational sum = 0;
  std::size_t rated = 0;
  for (const Run& run : runs) {
    SimulationOptions o = options;
    if (o.adversary == AdversaryKind::fixed_vector) {
      require(run.hidden.has_value(), ErrorKind::missing_lower_time,
              "the fixed adversary needs --hidden or lower times in the input");
      o.hidden = run.hidden;
    }
    SimulationReport r = simulate(VisibleInstance(run.instance), objective, eps, o);
    json doc = run.label;
    doc["objective"] = std::string(to_string(objective));
    doc["adversary"] = std::string(to_string(r.adversary));
    doc["alg_tested"] = job_set_to_json(r.alg_tested);
    doc["alg_value"] = rational_to_json(r.alg_value);
    doc["opt_tested"] = job_set_to_json(r.opt_tested);
    doc["opt_value"] = rational_to_json(r.opt_value);
    doc["ratio"] = r.ratio ? rational_to_json(*r.ratio) : json(nullptr);
    doc["bound"] = rational_to_json(bound);
    emit(doc);
    if (r.ratio) {
      worst = worst ? std::max(*worst, *r.ratio) : *r.ratio;
      sum += *r.ratio;
      ++rated;
    }
  }
  std::cerr << "runs " << runs.size() << "  rated " << rated;
  if (rated) {
    std::cerr << "  max_ratio " << to_double(*worst) << "  mean_ratio " << to_double(sum / rated)
              << "  bound " << to_double(bound);
  }
  std::cerr << '\n';
  return 0;
}

json rationals_json(const std::vector<Rational>& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

int run_partition(const std::string& u, bool verify) {
  PartitionReduction red = partition_to_sltb(parse_rational_list(u));
  json doc{{"items", rationals_json(red.items)},
           {"a", rationals_json(red.a)},
           {"b", rationals_json(red.b)},
           {"instance", instance_to_json(red.instance)},
           {"target", rational_to_json(red.target)}};
  int code = 0;
  if (verify) {
    PartitionCheck c = verify_partition_reduction(red);
    doc["verify"] = json{{"split_exists", c.split_exists},
                         {"optimum", rational_to_json(c.optimum)},
                         {"optimal_tested", job_set_to_json(c.optimal_tested)},
                         {"consistent", c.consistent}};
    code = c.consistent ? 0 : 1;
  }
  emit(doc);
  return code;
}

int run_knapsack(const std::string& values, const std::string& weights, const std::string& capacity) {
  KnapsackView k{parse_rational_list(values), parse_rational_list(weights), parse_rational(capacity)};
  emit(instance_to_json(knapsack_to_sltb(k)));
  return 0;
}

int run_bench_cmd(const std::string& config_path, const std::string& csv_path,
                  std::optional<unsigned> threads, std::optional<std::uint64_t> seed) {
  BenchConfig config = bench_config_from_json(read_json_file(config_path));
  if (threads) config.threads = *threads;
  if (seed) config.seed = *seed;
  std::vector<BenchRow> rows = run_bench(config);
  std::string csv = bench_csv(rows);
  std::string table = bench_table(rows);
  if (csv_path.empty()) {
    std::cout << csv;
    std::cerr << table;
  } else {
    std::ofstream out(csv_path);
    require(bool(out), ErrorKind::invalid_argument, "cannot write " + csv_path);
    out << csv;
    std::cout << table;
  }
  bool violated = std::any_of(rows.begin(), rows.end(), [](const BenchRow& r) { return r.violation; });
  return violated ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Single-machine scheduling with a limited testing budget"};
  app.require_subcommand(1);
  app.add_flag("--float", g_float, "Show rationals as floating point (display only)");

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  gen_cmd->add_option("--n", gen.spec.n, "Number of jobs");
  gen_cmd->add_option("--p-max", gen.spec.p_max, "Largest upper time");
  gen_cmd->add_option("--cost-max", gen.spec.cost_max, "Largest cost");
  gen_cmd->add_flag("--unit-costs", gen.spec.unit_costs, "All costs 1");
  gen_cmd->add_flag("--quarter", gen.quarter, "Quarter-integer times instead of integers");
  gen_cmd->add_option("--lower", gen.lower, "uniform|zero|fraction|equal|hidden");
  gen_cmd->add_option("--lower-fraction", gen.lower_fraction, "lower = fraction * upper");
  gen_cmd->add_option("--budget-fraction", gen.budget_fraction, "Budget as a fraction of total cost");
  gen_cmd->add_option("--seed", gen.spec.seed, "Random seed");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve an instance");
  solve_cmd->add_option("--objective", solve.objective, "tct|makespan");
  solve_cmd->add_option("--algo", solve.algo, "dp|fptas|greedy|ptas");
  solve_cmd->add_option("--epsilon", solve.epsilon, "Accuracy parameter");
  solve_cmd->add_option("--k", solve.k, "Number of jobs the greedy tests");
  solve_cmd->add_flag("--trace", solve.trace, "JSON lines on stderr (ptas)");
  solve_cmd->add_option("--input", solve.input, "Instance file, - for stdin");

  std::string oracle_objective = "tct";
  std::string oracle_input = "-";
  auto* oracle_cmd = app.add_subcommand("oracle", "Exhaustive optimum");
  oracle_cmd->add_option("--objective", oracle_objective, "tct|makespan");
  oracle_cmd->add_option("--input", oracle_input, "Instance file, - for stdin");

  ObliviousArgs obl;
  auto* obl_cmd = app.add_subcommand("oblivious", "Simulate the oblivious strategy");
  obl_cmd->add_option("--objective", obl.objective, "tct|makespan");
  obl_cmd->add_option("--epsilon", obl.epsilon, "Accuracy of the inner solver");
  obl_cmd->add_option("--adversary", obl.adversary, "worst|fixed");
  obl_cmd->add_option("--hidden", obl.hidden, "JSON array of hidden lower times");
  obl_cmd->add_option("--seeds", obl.seeds, "Number of random instances");
  obl_cmd->add_option("--seed", obl.seed, "First seed");
  obl_cmd->add_option("--n", obl.n, "Jobs per random instance");
  obl_cmd->add_option("--input", obl.input, "Instance file, - for stdin");
  obl_cmd->add_option("--hard", obl.hard, "Use the hard instance with this many jobs");
  obl_cmd->add_option("--opt", obl.opt, "oracle|fptas");

  auto* reduce_cmd = app.add_subcommand("reduce", "Build reduction instances");
  reduce_cmd->require_subcommand(1);
  std::string u;
  bool verify = false;
  auto* part_cmd = reduce_cmd->add_subcommand("partition", "Partition items to a tct instance");
  part_cmd->add_option("--u", u, "Comma-separated items")->required();
  part_cmd->add_flag("--verify", verify, "Solve exactly and check the equivalence");
  std::string values, weights, capacity;
  auto* knap_cmd = reduce_cmd->add_subcommand("knapsack", "Knapsack to a makespan instance");
  knap_cmd->add_option("--values", values, "Comma-separated values")->required();
  knap_cmd->add_option("--weights", weights, "Comma-separated weights")->required();
  knap_cmd->add_option("--capacity", capacity, "Capacity")->required();

  std::string bench_config, bench_csv_path;
  std::optional<unsigned> bench_threads;
  std::optional<std::uint64_t> bench_seed;
  auto* bench_cmd = app.add_subcommand("bench", "Run an algorithm grid against the oracle");
  bench_cmd->add_option("--config", bench_config, "Suite JSON")->required();
  bench_cmd->add_option("--csv", bench_csv_path, "Write CSV here; the table goes to stdout");
  bench_cmd->add_option("--threads", bench_threads, "Worker threads");
  bench_cmd->add_option("--seed", bench_seed, "First instance seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*oracle_cmd) return run_oracle(oracle_objective, oracle_input);
    if (*obl_cmd) return run_oblivious(obl);
    if (*part_cmd) return run_partition(u, verify);
    if (*knap_cmd) return run_knapsack(values, weights, capacity);
    if (*bench_cmd) return run_bench_cmd(bench_config, bench_csv_path, bench_threads, bench_seed);
  } catch (const Error& e) {
    std::cerr << json{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}.dump() << '\n';
    return 2;
  }
  return 0;
}
