#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sltb/rational.hpp"

namespace sltb {

enum class Relation { equal, less_equal };

struct LpTerm {
  std::size_t var;
  Rational coef;
};

struct LpRow {
  std::vector<LpTerm> terms;
  Relation relation = Relation::equal;
  Rational rhs;
};

struct LpVariable {
  Rational lower;
  std::optional<Rational> upper;  // nullopt = unbounded above
  Rational cost;
};

// Minimization LP over exact rationals with finite lower bounds.
class LinearProgram {
 public:
  std::size_t add_variable(Rational lower, std::optional<Rational> upper, Rational cost = 0);
  void set_cost(std::size_t var, Rational cost);
  void set_bounds(std::size_t var, Rational lower, std::optional<Rational> upper);
  void add_row(std::vector<LpTerm> terms, Relation relation, Rational rhs);

  std::size_t variable_count() const { return vars_.size(); }
  const std::vector<LpVariable>& variables() const { return vars_; }
  const std::vector<LpRow>& rows() const { return rows_; }

  Rational objective(const std::vector<Rational>& x) const;
  // Exact check of every row and bound.
  bool feasible(const std::vector<Rational>& x) const;

 private:
  std::vector<LpVariable> vars_;
  std::vector<LpRow> rows_;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;  // set when optimal
  Rational value;
  std::size_t pivots = 0;
  std::size_t presolved_variables = 0;  // variables fixed before the simplex ran
};

// Two-phase bounded-variable primal simplex with Bland's rule. Returns a
// basic optimal solution; the result depends only on the program.
LpResult solve(const LinearProgram& program);

}  // namespace sltb
