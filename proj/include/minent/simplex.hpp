#pragma once

#include <string>
#include <vector>

namespace minent {

enum class Relation { LessEq, Eq, GreaterEq };

struct LpRow {
  std::vector<double> coeffs;
  Relation rel = Relation::LessEq;
  double rhs = 0.0;
};

/// Dense linear program: minimize objective . x subject to the rows, with
/// per-variable nonnegativity flags (false = free variable).
struct LpProblem {
  std::vector<double> objective;
  std::vector<LpRow> rows;
  std::vector<bool> nonneg;  // one entry per variable

  size_t num_vars() const { return objective.size(); }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  double value = 0.0;
  std::vector<double> x;
};

/// Two-phase dense simplex with Bland's rule. Intended for small instances
/// (at most a few hundred variables and constraints). Throws
/// std::invalid_argument on inconsistent dimensions or non-finite entries.
LpSolution solve_lp(const LpProblem& p);

}  // namespace minent
