#pragma once

#include <optional>

#include "sltb/core.hpp"

namespace sltb {

// An instance whose lower times are hidden from the algorithm.
class VisibleInstance {
 public:
  explicit VisibleInstance(const Instance& instance) : instance_(instance.without_lowers()) {}
  const Instance& instance() const { return instance_; }
  std::size_t size() const { return instance_.size(); }

 private:
  Instance instance_;
};

// Same jobs with every lower time set to zero.
Instance auxiliary_instance(const VisibleInstance& visible);

// Tested set chosen without seeing lower times: solve the auxiliary instance
// approximately (exact DP for small integral upper times).
Solution oblivious_choose(const VisibleInstance& visible, Objective objective, const Rational& epsilon);

// Reveals lower = upper on the algorithm's tested jobs and 0 elsewhere.
Instance adversary_worst_case(const VisibleInstance& visible, const JobSet& alg_tested);

enum class AdversaryKind { worst_case, fixed_vector };
enum class OptMode { oracle, fptas };

std::string_view to_string(AdversaryKind kind);

struct SimulationOptions {
  AdversaryKind adversary = AdversaryKind::worst_case;
  std::optional<std::vector<Rational>> hidden;  // lower times for fixed_vector
  OptMode opt_mode = OptMode::oracle;
  bool allow_fptas_fallback = true;  // for the oracle mode above its size limit
};

struct SimulationReport {
  JobSet alg_tested;
  Rational alg_value;
  JobSet opt_tested;
  Rational opt_value;
  std::optional<Rational> ratio;  // nullopt when the optimum is 0
  Objective objective = Objective::tct;
  AdversaryKind adversary = AdversaryKind::worst_case;
};

SimulationReport simulate(const VisibleInstance& visible, Objective objective, const Rational& epsilon,
                          const SimulationOptions& options = {});

// Guarantee of the oblivious strategy: 4 + 2 epsilon for completion time sums
// and 2 + epsilon for the makespan.
Rational oblivious_bound(Objective objective, const Rational& epsilon);

// n unit jobs with unit costs and budget n/2; n must be even.
VisibleInstance hard_instance(std::size_t n);

}  // namespace sltb
