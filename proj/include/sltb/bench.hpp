#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "sltb/core.hpp"
#include "sltb/generator.hpp"

namespace sltb {

// Algorithm names: tct-dp, tct-fptas, tct-greedy, tct-ptas, makespan-dp,
// makespan-fptas, makespan-greedy.
struct BenchAlgorithm {
  std::string name;
  std::optional<Rational> epsilon;
  std::optional<std::size_t> k;  // greedy test count; defaults to floor(budget)
};

Objective objective_of(const BenchAlgorithm& algorithm);

// Proven ratio bound for an instance, if the algorithm has one there.
std::optional<Rational> guarantee(const BenchAlgorithm& algorithm, const Instance& instance);

struct BenchConfig {
  GeneratorSpec generator;
  std::size_t count = 20;
  std::size_t n_min = 2;
  std::size_t n_max = 8;
  std::uint64_t seed = 1;  // instance i uses seed + i
  std::vector<BenchAlgorithm> algorithms;
  unsigned threads = 1;
};

BenchConfig bench_config_from_json(const nlohmann::json& doc);

struct BenchRow {
  std::uint64_t seed = 0;
  std::string algo;
  Objective objective = Objective::tct;
  std::size_t n = 0;
  std::optional<Rational> value;
  Rational oracle;
  std::optional<Rational> ratio;
  std::optional<Rational> bound;
  long long micros = 0;
  bool violation = false;
  std::string error;
};

// Rows are ordered by instance, then by algorithm name, whatever the thread count.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::string bench_csv(const std::vector<BenchRow>& rows);
std::string bench_table(const std::vector<BenchRow>& rows);

}  // namespace sltb
