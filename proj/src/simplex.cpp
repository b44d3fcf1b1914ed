#include "minent/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace minent {

namespace {

constexpr double kCostTol = 1e-10;   // reduced-cost negativity threshold
constexpr double kPivotTol = 1e-11;  // smallest usable pivot element
constexpr double kFeasTol = 1e-9;    // phase-1 optimum considered zero

struct Tableau {
  size_t m = 0;       // rows
  size_t n = 0;       // columns excluding rhs
  size_t n_real = 0;  // structural + slack columns (artificials follow)
  std::vector<double> a;  // m x (n+1), last column is rhs
  std::vector<size_t> basis;

  double& at(size_t i, size_t j) { return a[i * (n + 1) + j]; }
  double at(size_t i, size_t j) const { return a[i * (n + 1) + j]; }
  double& rhs(size_t i) { return a[i * (n + 1) + n]; }
  double rhs(size_t i) const { return a[i * (n + 1) + n]; }

  void pivot(size_t pr, size_t pc) {
    const double pv = at(pr, pc);
    for (size_t j = 0; j <= n; ++j) at(pr, j) /= pv;
    for (size_t i = 0; i < m; ++i) {
      if (i == pr) continue;
      const double factor = at(i, pc);
      if (factor == 0.0) continue;
      for (size_t j = 0; j <= n; ++j) at(i, j) -= factor * at(pr, j);
      at(i, pc) = 0.0;
    }
    basis[pr] = pc;
  }
};

// Reduced cost row z_j - c_j for the given costs under the current basis.
std::vector<double> reduced_costs(const Tableau& t, const std::vector<double>& costs, double* obj) {
  std::vector<double> red(costs);
  double z = 0.0;
  for (size_t i = 0; i < t.m; ++i) {
    const double cb = costs[t.basis[i]];
    if (cb == 0.0) continue;
    z += cb * t.rhs(i);
    for (size_t j = 0; j < t.n; ++j) red[j] -= cb * t.at(i, j);
  }
  if (obj) *obj = z;
  return red;
}

// Bland's rule iteration for min c.x; returns false when unbounded.
bool run_simplex(Tableau& t, const std::vector<double>& costs, size_t max_enter_col) {
  for (long iter = 0; iter < 100000; ++iter) {
    const std::vector<double> red = reduced_costs(t, costs, nullptr);
    size_t enter = t.n;
    for (size_t j = 0; j < max_enter_col; ++j) {
      if (red[j] < -kCostTol) {
        enter = j;
        break;
      }
    }
    if (enter == t.n) return true;  // optimal

    size_t leave = t.m;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < t.m; ++i) {
      const double aij = t.at(i, enter);
      if (aij > kPivotTol) {
        const double ratio = t.rhs(i) / aij;
        if (ratio < best_ratio - 1e-12 ||
            (ratio < best_ratio + 1e-12 && (leave == t.m || t.basis[i] < t.basis[leave]))) {
          best_ratio = ratio;
          leave = i;
        }
      }
    }
    if (leave == t.m) return false;  // unbounded
    t.pivot(leave, enter);
  }
  throw std::runtime_error("solve_lp: iteration limit exceeded");
}

}  // namespace

LpSolution solve_lp(const LpProblem& p) {
  const size_t nv = p.num_vars();
  if (p.nonneg.size() != nv) throw std::invalid_argument("solve_lp: nonneg flag count mismatch");
  for (double c : p.objective)
    if (!std::isfinite(c)) throw std::invalid_argument("solve_lp: non-finite objective");
  for (const LpRow& r : p.rows) {
    if (r.coeffs.size() != nv) throw std::invalid_argument("solve_lp: row width mismatch");
    if (!std::isfinite(r.rhs)) throw std::invalid_argument("solve_lp: non-finite rhs");
    for (double c : r.coeffs)
      if (!std::isfinite(c)) throw std::invalid_argument("solve_lp: non-finite coefficient");
  }

  // Column layout: one column per nonnegative variable, two (plus/minus) per
  // free variable, then one slack per inequality row, then artificials.
  std::vector<size_t> col_of(nv);
  size_t n_struct = 0;
  for (size_t j = 0; j < nv; ++j) {
    col_of[j] = n_struct;
    n_struct += p.nonneg[j] ? 1 : 2;
  }
  size_t n_slack = 0;
  for (const LpRow& r : p.rows)
    if (r.rel != Relation::Eq) ++n_slack;

  const size_t m = p.rows.size();
  Tableau t;
  t.m = m;
  t.n_real = n_struct + n_slack;
  t.n = t.n_real + m;  // one artificial per row
  t.a.assign(m * (t.n + 1), 0.0);
  t.basis.resize(m);

  size_t slack_idx = 0;
  for (size_t i = 0; i < m; ++i) {
    const LpRow& r = p.rows[i];
    for (size_t j = 0; j < nv; ++j) {
      t.at(i, col_of[j]) = r.coeffs[j];
      if (!p.nonneg[j]) t.at(i, col_of[j] + 1) = -r.coeffs[j];
    }
    if (r.rel != Relation::Eq) {
      t.at(i, n_struct + slack_idx) = (r.rel == Relation::LessEq) ? 1.0 : -1.0;
      ++slack_idx;
    }
    t.rhs(i) = r.rhs;
    if (t.rhs(i) < 0.0)
      for (size_t j = 0; j <= t.n; ++j) t.at(i, j) = -t.at(i, j);
    t.at(i, t.n_real + i) = 1.0;
    t.basis[i] = t.n_real + i;
  }

  // Phase 1: minimize the artificial mass.
  std::vector<double> phase1_costs(t.n, 0.0);
  for (size_t i = 0; i < m; ++i) phase1_costs[t.n_real + i] = 1.0;
  if (!run_simplex(t, phase1_costs, t.n))
    throw std::runtime_error("solve_lp: phase 1 unbounded");
  double phase1_obj = 0.0;
  reduced_costs(t, phase1_costs, &phase1_obj);
  if (phase1_obj > kFeasTol) return LpSolution{LpStatus::Infeasible, 0.0, {}};

  // Drive remaining artificials out of the basis; redundant rows get pinned
  // by pivoting wherever possible (a fully zero row is harmless at level 0).
  for (size_t i = 0; i < m; ++i) {
    if (t.basis[i] < t.n_real) continue;
    for (size_t j = 0; j < t.n_real; ++j) {
      if (std::abs(t.at(i, j)) > kPivotTol) {
        t.pivot(i, j);
        break;
      }
    }
  }

  // Phase 2 over structural and slack columns only.
  std::vector<double> costs(t.n, 0.0);
  for (size_t j = 0; j < nv; ++j) {
    costs[col_of[j]] = p.objective[j];
    if (!p.nonneg[j]) costs[col_of[j] + 1] = -p.objective[j];
  }
  if (!run_simplex(t, costs, t.n_real)) return LpSolution{LpStatus::Unbounded, 0.0, {}};

  std::vector<double> full(t.n, 0.0);
  for (size_t i = 0; i < m; ++i) full[t.basis[i]] = t.rhs(i);
  LpSolution sol;
  sol.status = LpStatus::Optimal;
  sol.x.resize(nv);
  for (size_t j = 0; j < nv; ++j)
    sol.x[j] = p.nonneg[j] ? full[col_of[j]] : full[col_of[j]] - full[col_of[j] + 1];
  sol.value = 0.0;
  for (size_t j = 0; j < nv; ++j) sol.value += p.objective[j] * sol.x[j];
  return sol;
}

}  // namespace minent
