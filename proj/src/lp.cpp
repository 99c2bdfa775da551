#include "sltb/lp.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>

#include "sltb/error.hpp"

namespace sltb {

std::size_t LinearProgram::add_variable(Rational lower, std::optional<Rational> upper,
                                        Rational cost) {
  require(!upper || lower <= *upper, ErrorKind::invalid_argument, "empty variable range");
  vars_.push_back(LpVariable{std::move(lower), std::move(upper), std::move(cost)});
  return vars_.size() - 1;
}

void LinearProgram::set_cost(std::size_t var, Rational cost) { vars_.at(var).cost = std::move(cost); }

void LinearProgram::set_bounds(std::size_t var, Rational lower, std::optional<Rational> upper) {
  require(!upper || lower <= *upper, ErrorKind::invalid_argument, "empty variable range");
  vars_.at(var).lower = std::move(lower);
  vars_.at(var).upper = std::move(upper);
}

void LinearProgram::add_row(std::vector<LpTerm> terms, Relation relation, Rational rhs) {
  for (const auto& t : terms) {
    require(t.var < vars_.size(), ErrorKind::invalid_argument, "row refers to unknown variable");
  }
  rows_.push_back(LpRow{std::move(terms), relation, std::move(rhs)});
}

Rational LinearProgram::objective(const std::vector<Rational>& x) const {
  Rational total = 0;
  for (std::size_t v = 0; v < vars_.size(); ++v) total += vars_[v].cost * x.at(v);
  return total;
}

bool LinearProgram::feasible(const std::vector<Rational>& x) const {
  if (x.size() != vars_.size()) return false;
  for (std::size_t v = 0; v < vars_.size(); ++v) {
    if (x[v] < vars_[v].lower) return false;
    if (vars_[v].upper && x[v] > *vars_[v].upper) return false;
  }
  for (const auto& row : rows_) {
    Rational lhs = 0;
    for (const auto& t : row.terms) lhs += t.coef * x[t.var];
    if (row.relation == Relation::equal ? lhs != row.rhs : lhs > row.rhs) return false;
  }
  return true;
}

namespace {

struct WorkRow {
  std::map<std::size_t, Rational> terms;  // free variables only, nonzero coefficients
  Relation relation;
  Rational rhs;
};

// Fixes variables with equal bounds, then repeatedly drops empty rows and
// zeroes every variable of a row that can only be met with all of them at
// their lower bound of zero. Returns false on a detected infeasibility.
bool presolve(const LinearProgram& lp, std::vector<std::optional<Rational>>& fixed,
              std::vector<WorkRow>& rows) {
  const auto& vars = lp.variables();
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (vars[v].upper && *vars[v].upper == vars[v].lower) fixed[v] = vars[v].lower;
  }
  for (const auto& row : lp.rows()) {
    WorkRow w{{}, row.relation, row.rhs};
    for (const auto& t : row.terms) w.terms[t.var] += t.coef;
    rows.push_back(std::move(w));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& row : rows) {
      for (auto it = row.terms.begin(); it != row.terms.end();) {
        if (it->second == 0) {
          it = row.terms.erase(it);
        } else if (fixed[it->first]) {
          row.rhs -= it->second * *fixed[it->first];
          it = row.terms.erase(it);
        } else {
          ++it;
        }
      }
    }
    std::vector<WorkRow> kept;
    for (auto& row : rows) {
      if (row.terms.empty()) {
        bool ok = row.relation == Relation::equal ? row.rhs == 0 : row.rhs >= 0;
        if (!ok) return false;
        changed = true;
        continue;
      }
      if (row.rhs == 0) {
        bool all_pos = true;
        bool all_neg = true;
        bool zero_floor = true;
        for (const auto& [v, a] : row.terms) {
          all_pos = all_pos && a > 0;
          all_neg = all_neg && a < 0;
          zero_floor = zero_floor && vars[v].lower == 0;
        }
        bool forcing = zero_floor && (all_pos || (all_neg && row.relation == Relation::equal));
        if (forcing) {
          for (const auto& [v, a] : row.terms) fixed[v] = Rational(0);
          changed = true;
          continue;
        }
      }
      kept.push_back(std::move(row));
    }
    rows = std::move(kept);
  }
  return true;
}

class Simplex {
 public:
  Simplex(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_(rows, std::vector<Rational>(cols)) {}

  std::size_t m_;
  std::size_t n_;
  std::vector<std::vector<Rational>> t_;   // B^-1 A
  std::vector<Rational> beta_;             // basic values
  std::vector<std::size_t> basis_;         // column basic in each row
  std::vector<std::optional<Rational>> ub_;
  std::vector<bool> at_upper_;
  std::vector<bool> is_basic_;
  std::vector<bool> blocked_;              // may never enter
  std::size_t pivots_ = 0;

  Rational nonbasic_value(std::size_t c) const { return at_upper_[c] ? *ub_[c] : Rational(0); }

  void pivot(std::size_t r, std::size_t c) {
    ++pivots_;
    Rational inv = 1 / t_[r][c];
    std::vector<std::size_t> nz;
    for (std::size_t k = 0; k < n_; ++k) {
      if (t_[r][k] != 0) {
        t_[r][k] *= inv;
        nz.push_back(k);
      }
    }
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r || t_[i][c] == 0) continue;
      Rational f = t_[i][c];
      for (std::size_t k : nz) t_[i][k] -= f * t_[r][k];
    }
    is_basic_[basis_[r]] = false;
    is_basic_[c] = true;
    basis_[r] = c;
  }

  // Returns false when the phase is unbounded.
  bool run(const std::vector<Rational>& cost) {
    for (;;) {
      std::optional<std::size_t> enter;
      int dir = 0;
      for (std::size_t c = 0; c < n_ && !enter; ++c) {
        if (is_basic_[c] || blocked_[c]) continue;
        Rational d = cost[c];
        for (std::size_t r = 0; r < m_; ++r) {
          if (t_[r][c] != 0) d -= cost[basis_[r]] * t_[r][c];
        }
        bool room = !ub_[c] || *ub_[c] > 0;
        if (!at_upper_[c] && d < 0 && room) {
          enter = c;
          dir = 1;
        } else if (at_upper_[c] && d > 0) {
          enter = c;
          dir = -1;
        }
      }
      if (!enter) return true;
      const std::size_t c = *enter;

      std::optional<Rational> step;
      std::optional<std::size_t> leave_row;
      for (std::size_t r = 0; r < m_; ++r) {
        const Rational& a = t_[r][c];
        if (a == 0) continue;
        // basic value moves by -dir * a per unit step
        std::optional<Rational> limit;
        bool falls = (dir > 0) == (a > 0);
        if (falls) {
          limit = beta_[r] / (dir > 0 ? a : Rational(-a));
        } else if (ub_[basis_[r]]) {
          limit = (*ub_[basis_[r]] - beta_[r]) / (dir > 0 ? Rational(-a) : a);
        }
        if (!limit) continue;
        if (!step || *limit < *step ||
            (*limit == *step && basis_[r] < basis_[*leave_row])) {
          step = limit;
          leave_row = r;
        }
      }
      if (ub_[c] && (!step || *ub_[c] < *step)) {
        const Rational& u = *ub_[c];
        for (std::size_t r = 0; r < m_; ++r) {
          if (t_[r][c] != 0) beta_[r] -= Rational(dir) * t_[r][c] * u;
        }
        at_upper_[c] = !at_upper_[c];
        continue;
      }
      if (!step) return false;
      const Rational theta = *step;
      const std::size_t r = *leave_row;
      for (std::size_t i = 0; i < m_; ++i) {
        if (t_[i][c] != 0) beta_[i] -= Rational(dir) * t_[i][c] * theta;
      }
      const std::size_t out = basis_[r];
      // leaving variable rests on whichever bound it reached
      at_upper_[out] = ub_[out] && beta_[r] == *ub_[out] && beta_[r] != 0;
      Rational entering = dir > 0 ? theta : Rational(*ub_[c] - theta);
      pivot(r, c);
      beta_[r] = entering;
      at_upper_[c] = false;
    }
  }
};

}  // namespace

LpResult solve(const LinearProgram& program) {
  const auto& vars = program.variables();
  LpResult result;
  std::vector<std::optional<Rational>> fixed(vars.size());
  std::vector<WorkRow> rows;
  if (!presolve(program, fixed, rows)) {
    result.status = LpStatus::infeasible;
    return result;
  }
  for (const auto& f : fixed) result.presolved_variables += f.has_value();

  std::vector<std::size_t> col_of(vars.size(), SIZE_MAX);
  std::vector<std::size_t> var_of;
  for (std::size_t v = 0; v < vars.size(); ++v) {
    if (!fixed[v]) {
      col_of[v] = var_of.size();
      var_of.push_back(v);
    }
  }
  const std::size_t nv = var_of.size();
  const std::size_t m = rows.size();
  std::size_t slacks = 0;
  for (const auto& row : rows) slacks += row.relation == Relation::less_equal;
  const std::size_t cols = nv + slacks + m;  // structural, slack, artificial

  Simplex s(m, cols);
  s.ub_.assign(cols, std::nullopt);
  s.at_upper_.assign(cols, false);
  s.is_basic_.assign(cols, false);
  s.blocked_.assign(cols, false);
  for (std::size_t k = 0; k < nv; ++k) {
    const auto& var = vars[var_of[k]];
    if (var.upper) s.ub_[k] = *var.upper - var.lower;
  }
  std::size_t next_slack = nv;
  for (std::size_t r = 0; r < m; ++r) {
    Rational rhs = rows[r].rhs;
    for (const auto& [v, a] : rows[r].terms) {
      s.t_[r][col_of[v]] = a;
      rhs -= a * vars[v].lower;
    }
    if (rows[r].relation == Relation::less_equal) s.t_[r][next_slack++] = 1;
    if (rhs < 0) {
      for (auto& a : s.t_[r]) a = -a;
      rhs = -rhs;
    }
    s.t_[r][nv + slacks + r] = 1;
    s.basis_.push_back(nv + slacks + r);
    s.is_basic_[nv + slacks + r] = true;
    s.beta_.push_back(rhs);
  }

  std::vector<Rational> phase1(cols, Rational(0));
  for (std::size_t r = 0; r < m; ++r) phase1[nv + slacks + r] = 1;
  s.run(phase1);
  Rational infeasibility = 0;
  for (std::size_t r = 0; r < m; ++r) {
    if (s.basis_[r] >= nv + slacks) infeasibility += s.beta_[r];
  }
  result.pivots = s.pivots_;
  if (infeasibility != 0) {
    result.status = LpStatus::infeasible;
    return result;
  }
  for (std::size_t a = nv + slacks; a < cols; ++a) {
    s.ub_[a] = Rational(0);
    s.blocked_[a] = true;
  }
  for (std::size_t r = 0; r < m; ++r) {
    if (s.basis_[r] < nv + slacks) continue;
    for (std::size_t c = 0; c < nv + slacks; ++c) {
      if (!s.is_basic_[c] && s.t_[r][c] != 0) {
        Rational value = s.nonbasic_value(c);
        s.pivot(r, c);
        s.beta_[r] = value;
        s.at_upper_[c] = false;
        break;
      }
    }
  }

  std::vector<Rational> phase2(cols, Rational(0));
  for (std::size_t k = 0; k < nv; ++k) phase2[k] = vars[var_of[k]].cost;
  bool bounded = s.run(phase2);
  result.pivots = s.pivots_;
  if (!bounded) {
    result.status = LpStatus::unbounded;
    return result;
  }

  std::vector<Rational> shifted(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    if (!s.is_basic_[c]) shifted[c] = s.nonbasic_value(c);
  }
  for (std::size_t r = 0; r < m; ++r) shifted[s.basis_[r]] = s.beta_[r];
  result.x.assign(vars.size(), Rational(0));
  for (std::size_t v = 0; v < vars.size(); ++v) {
    result.x[v] = fixed[v] ? *fixed[v] : vars[v].lower + shifted[col_of[v]];
  }
  result.value = program.objective(result.x);
  result.status = LpStatus::optimal;
  require(program.feasible(result.x), ErrorKind::invariant_breach, "simplex returned an infeasible point");
  return result;
}

}  // namespace sltb
