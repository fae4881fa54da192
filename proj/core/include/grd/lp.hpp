#pragma once

#include <optional>
#include <string>
#include <vector>

#include "grd/rational.hpp"

namespace grd {

enum class Relation { LessEq, Equal, GreaterEq };

struct LinearTerm {
  int var;
  Rational coeff;
};

struct LPRow {
  std::vector<LinearTerm> terms;  // sorted by var, no duplicates
  Relation rel = Relation::LessEq;
  Rational rhs;
  std::string name;
};

struct LinearProgram {
  bool maximize = true;
  std::vector<Rational> objective;
  std::vector<std::optional<Rational>> lower, upper;
  std::vector<std::string> var_names;
  std::vector<LPRow> rows;

  int add_var(std::string name = {}, std::optional<Rational> lo = std::nullopt,
              std::optional<Rational> hi = std::nullopt);
  void add_row(LPRow row);
  int num_vars() const { return (int)objective.size(); }
};

enum class LPStatus { Optimal, Infeasible, Unbounded };

// Infeasibility certificates list one multiplier per constraint row,
// followed by one per lower bound (row -x_i <= -l_i) and one per upper
// bound (row x_i <= u_i); see certifies_infeasible.
struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  std::vector<Rational> x;
  std::vector<Rational> row_mult;
  std::vector<Rational> ray;
  long pivots = 0;
};

// Exact rational simplex, Bland's rule throughout. The returned result
// is re-verified internally (point feasibility, certificate validity)
// before being handed back.
LPResult simplex_solve(const LinearProgram& lp);

bool satisfies(const LinearProgram& lp, const std::vector<Rational>& x);
Rational objective_value(const LinearProgram& lp, const std::vector<Rational>& x);

// Valid iff multipliers have the right signs (>= 0 on LessEq rows and
// upper/lower bound rows, <= 0 on GreaterEq rows, free on Equal rows),
// the aggregated left-hand side cancels to zero, and the aggregated
// right-hand side is negative.
bool certifies_infeasible(const LinearProgram& lp, const std::vector<Rational>& mult);

// Valid iff x is feasible, x + t*ray stays feasible for all t >= 0, and
// the objective strictly improves along ray.
bool certifies_unbounded(const LinearProgram& lp, const std::vector<Rational>& x,
                         const std::vector<Rational>& ray);

// One constraint per line, rationals as p/q; for external cross-checks.
std::string to_text(const LinearProgram& lp);

}  // namespace grd
