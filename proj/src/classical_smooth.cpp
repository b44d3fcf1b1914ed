#include "minent/classical_smooth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "minent/simplex.hpp"

namespace minent {

JointDistribution::JointDistribution(size_t nx, size_t ny, std::vector<double> table)
    : nx_(nx), ny_(ny), table_(std::move(table)) {
  if (nx_ == 0 || ny_ == 0 || table_.size() != nx_ * ny_)
    throw std::invalid_argument("JointDistribution: table size does not match dimensions");
  double sum = 0.0;
  for (double v : table_) {
    if (!(v >= 0.0)) throw std::invalid_argument("JointDistribution: entries must be nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("JointDistribution: entries must sum to 1");
  px_.assign(nx_, 0.0);
  py_.assign(ny_, 0.0);
  for (size_t x = 0; x < nx_; ++x)
    for (size_t y = 0; y < ny_; ++y) {
      px_[x] += p(x, y);
      py_[y] += p(x, y);
    }
}

JointDistribution JointDistribution::parse_csv(const std::string& text) {
  std::vector<double> table;
  size_t ny = 0;
  size_t nx = 0;
  std::stringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.find_first_not_of(" \t\r,") == std::string::npos) continue;
    std::stringstream row(line);
    std::string item;
    size_t width = 0;
    while (std::getline(row, item, ',')) {
      table.push_back(std::stod(item));
      ++width;
    }
    if (ny == 0) ny = width;
    if (width != ny) throw std::invalid_argument("JointDistribution: ragged CSV rows");
    ++nx;
  }
  return JointDistribution(nx, ny, std::move(table));
}

TraceSmoothResult hmin_trace_relaxed(const JointDistribution& p, double eps) {
  if (!(eps >= 0.0)) throw std::domain_error("hmin_trace_relaxed: eps must be >= 0");
  const size_t nx = p.nx(), ny = p.ny();

  // Minimal removed mass at a given lambda is sum max(0, P - lambda P_Y),
  // piecewise linear in lambda with breakpoints at the ratios P(x,y)/P(y).
  struct Term {
    double ratio, mass, weight;
  };
  std::vector<Term> terms;
  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y)
      if (p.p(x, y) > 0.0) terms.push_back({p.p(x, y) / p.py(y), p.p(x, y), p.py(y)});
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.ratio > b.ratio; });

  double lambda = terms.empty() ? 0.0 : terms.front().ratio;
  if (eps > 0.0 || terms.empty()) {
    double mass_sum = 0.0, weight_sum = 0.0;
    lambda = 0.0;
    for (size_t j = 0; j < terms.size(); ++j) {
      mass_sum += terms[j].mass;
      weight_sum += terms[j].weight;
      const double next_ratio = (j + 1 < terms.size()) ? terms[j + 1].ratio : 0.0;
      const double removed_at_next = mass_sum - next_ratio * weight_sum;
      if (removed_at_next >= eps) {
        lambda = std::max(0.0, (mass_sum - eps) / weight_sum);
        break;
      }
    }
  }

  TraceSmoothResult res;
  res.lambda = lambda;
  res.witness.program = SmoothProgram::PartialTrace;
  res.witness.lambda = lambda;
  res.witness.w_table.resize(nx * ny);
  res.witness.s_table.resize(nx * ny);
  double removed = 0.0;
  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y) {
      const double w = std::max(0.0, p.p(x, y) - lambda * p.py(y));
      res.witness.w_table[x * ny + y] = w;
      res.witness.s_table[x * ny + y] = p.p(x, y) - w;
      removed += w;
    }
  res.witness.max_residual = std::max(0.0, removed - eps);
  return res;
}

double hmin_trace_lp(const JointDistribution& p, double eps, SmoothMode mode) {
  const size_t nx = p.nx(), ny = p.ny();
  if (nx * ny > 50) throw std::domain_error("hmin_trace_lp: LP oracle limited to |X||Y| <= 50");

  // Variables: [lambda, S(0..nx*ny-1), W(0..nx*ny-1)], all nonnegative.
  const size_t ns = nx * ny;
  const size_t nvars = 1 + 2 * ns;
  LpProblem lp;
  lp.objective.assign(nvars, 0.0);
  lp.objective[0] = 1.0;
  lp.nonneg.assign(nvars, true);

  auto s_col = [&](size_t x, size_t y) { return 1 + x * ny + y; };
  auto w_col = [&](size_t x, size_t y) { return 1 + ns + x * ny + y; };

  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y) {
      // lambda P(y) - S(x,y) >= 0
      LpRow dom{std::vector<double>(nvars, 0.0), Relation::GreaterEq, 0.0};
      dom.coeffs[0] = p.py(y);
      dom.coeffs[s_col(x, y)] = -1.0;
      lp.rows.push_back(std::move(dom));
      // S + W >= P
      LpRow close{std::vector<double>(nvars, 0.0), Relation::GreaterEq, p.p(x, y)};
      close.coeffs[s_col(x, y)] = 1.0;
      close.coeffs[w_col(x, y)] = 1.0;
      lp.rows.push_back(std::move(close));
    }
  {
    LpRow wmass{std::vector<double>(nvars, 0.0), Relation::LessEq, eps};
    for (size_t i = 0; i < ns; ++i) wmass.coeffs[1 + ns + i] = 1.0;
    lp.rows.push_back(std::move(wmass));
  }
  if (mode == SmoothMode::Partial) {
    for (size_t y = 0; y < ny; ++y) {
      LpRow marg{std::vector<double>(nvars, 0.0), Relation::LessEq, p.py(y)};
      for (size_t x = 0; x < nx; ++x) marg.coeffs[s_col(x, y)] = 1.0;
      lp.rows.push_back(std::move(marg));
    }
  } else {
    LpRow total{std::vector<double>(nvars, 0.0), Relation::LessEq, 1.0};
    for (size_t i = 0; i < ns; ++i) total.coeffs[1 + i] = 1.0;
    lp.rows.push_back(std::move(total));
  }

  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal)
    throw std::runtime_error("hmin_trace_lp: LP reported no optimum");
  return sol.value;
}

namespace {

// Water-filling: maximize sum_i sqrt(w_i s_i) over 0 <= s_i <= cap_i with
// sum s_i <= budget. Unconstrained maximizer is s_i = w_i / (4 mu^2), clipped
// at the caps; mu is located by bisection when the budget binds.
double group_best_overlap(const std::vector<double>& w, const std::vector<double>& cap,
                          double budget) {
  const size_t k = w.size();
  double cap_sum = 0.0;
  for (double c : cap) cap_sum += c;
  auto overlap_with = [&](auto&& alloc) {
    double f = 0.0;
    for (size_t i = 0; i < k; ++i) f += std::sqrt(w[i] * alloc(i));
    return f;
  };
  if (cap_sum <= budget) return overlap_with([&](size_t i) { return cap[i]; });

  auto alloc_at = [&](double inv4mu2) {
    return [&, inv4mu2](size_t i) { return std::min(cap[i], w[i] * inv4mu2); };
  };
  auto used = [&](double inv4mu2) {
    double total = 0.0;
    const auto a = alloc_at(inv4mu2);
    for (size_t i = 0; i < k; ++i) total += a(i);
    return total;
  };
  // Bisect on 1/(4 mu^2): allocation grows monotonically with it.
  double lo = 0.0, hi = 1.0;
  while (used(hi) < budget && hi < 1e30) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (used(mid) < budget)
      lo = mid;
    else
      hi = mid;
  }
  return overlap_with(alloc_at(0.5 * (lo + hi)));
}

}  // namespace

double purified_best_overlap(const JointDistribution& p, double lambda, SmoothMode mode) {
  const size_t nx = p.nx(), ny = p.ny();
  if (mode == SmoothMode::Partial) {
    double f = 0.0;
    for (size_t y = 0; y < ny; ++y) {
      if (p.py(y) <= 0.0) continue;
      std::vector<double> w(nx), cap(nx, lambda * p.py(y));
      for (size_t x = 0; x < nx; ++x) w[x] = p.p(x, y);
      f += group_best_overlap(w, cap, p.py(y));
    }
    return f;
  }
  std::vector<double> w(nx * ny), cap(nx * ny);
  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y) {
      w[x * ny + y] = p.p(x, y);
      cap[x * ny + y] = lambda * p.py(y);
    }
  return group_best_overlap(w, cap, 1.0);
}

double hmin_purified_classical(const JointDistribution& p, double eps, SmoothMode mode) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::domain_error("hmin_purified_classical: eps must lie in (0, 1)");
  const double target = std::sqrt(1.0 - eps * eps);

  double hi = 0.0;  // unsmoothed value: max ratio P(x,y)/P(y)
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t y = 0; y < p.ny(); ++y)
      if (p.py(y) > 0.0) hi = std::max(hi, p.p(x, y) / p.py(y));
  if (purified_best_overlap(p, hi, mode) < target)
    throw std::runtime_error("hmin_purified_classical: bracket does not reach the overlap target");

  double lo = 0.0;
  for (int iter = 0; iter < 120; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (purified_best_overlap(p, mid, mode) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

namespace {

LpProblem imax_lp_common(const JointDistribution& p, double eps, bool partial) {
  const size_t nx = p.nx(), ny = p.ny();
  if (nx * ny > 50) throw std::domain_error("imax LP oracle limited to |X||Y| <= 50");
  const size_t ns = nx * ny;
  const size_t nvars = 2 * ns + ny;  // Q, T, R
  LpProblem lp;
  lp.objective.assign(nvars, 0.0);
  for (size_t y = 0; y < ny; ++y) lp.objective[2 * ns + y] = 1.0;
  lp.nonneg.assign(nvars, true);

  auto q_col = [&](size_t x, size_t y) { return x * ny + y; };
  auto t_col = [&](size_t x, size_t y) { return ns + x * ny + y; };
  auto r_col = [&](size_t y) { return 2 * ns + y; };

  for (size_t x = 0; x < nx; ++x)
    for (size_t y = 0; y < ny; ++y) {
      // P_X(x) R(y) - Q(x,y) >= 0
      LpRow dom{std::vector<double>(nvars, 0.0), Relation::GreaterEq, 0.0};
      dom.coeffs[r_col(y)] = p.px(x);
      dom.coeffs[q_col(x, y)] = -1.0;
      lp.rows.push_back(std::move(dom));
      // T + Q >= P
      LpRow close{std::vector<double>(nvars, 0.0), Relation::GreaterEq, p.p(x, y)};
      close.coeffs[t_col(x, y)] = 1.0;
      close.coeffs[q_col(x, y)] = 1.0;
      lp.rows.push_back(std::move(close));
    }
  {
    LpRow tmass{std::vector<double>(nvars, 0.0), Relation::LessEq, eps};
    for (size_t i = 0; i < ns; ++i) tmass.coeffs[ns + i] = 1.0;
    lp.rows.push_back(std::move(tmass));
  }
  if (partial) {
    for (size_t x = 0; x < nx; ++x) {
      LpRow row{std::vector<double>(nvars, 0.0), Relation::Eq, p.px(x)};
      for (size_t y = 0; y < ny; ++y) row.coeffs[q_col(x, y)] = 1.0;
      lp.rows.push_back(std::move(row));
    }
  } else {
    LpRow norm{std::vector<double>(nvars, 0.0), Relation::Eq, 1.0};
    for (size_t i = 0; i < ns; ++i) norm.coeffs[i] = 1.0;
    lp.rows.push_back(std::move(norm));
  }
  return lp;
}

ImaxResult imax_lp(const JointDistribution& p, double eps, bool partial) {
  const LpProblem lp = imax_lp_common(p, eps, partial);
  const LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::Optimal) throw std::runtime_error("imax LP reported no optimum");
  const size_t ns = p.nx() * p.ny();
  ImaxResult res;
  res.value = sol.value;
  res.q.assign(sol.x.begin(), sol.x.begin() + ns);
  res.t.assign(sol.x.begin() + ns, sol.x.begin() + 2 * ns);
  res.r.assign(sol.x.begin() + 2 * ns, sol.x.end());
  return res;
}

}  // namespace

ImaxResult imax_global_lp(const JointDistribution& p, double eps) { return imax_lp(p, eps, false); }

ImaxResult imax_partial_lp(const JointDistribution& p, double eps) { return imax_lp(p, eps, true); }

ImaxPartialWitness imax_partial_from_global(const JointDistribution& p, double eps,
                                            const ImaxResult& global) {
  const size_t nx = p.nx(), ny = p.ny();
  ImaxPartialWitness wit;
  wit.r = global.r;
  wit.t.resize(nx * ny);
  wit.q.assign(nx * ny, 0.0);

  // Clipping T to P keeps it feasible: wherever T exceeded P the closeness
  // constraint is already slack against Q >= 0.
  for (size_t i = 0; i < nx * ny; ++i) wit.t[i] = std::min(global.t[i], p.table()[i]);

  for (size_t x = 0; x < nx; ++x) {
    if (p.px(x) <= 0.0) continue;  // zero-probability row carries no constraint
    double sum_low = 0.0, sum_up = 0.0;
    std::vector<double> low(ny);
    for (size_t y = 0; y < ny; ++y) {
      low[y] = (p.p(x, y) - wit.t[x * ny + y]) / p.px(x);
      sum_low += low[y];
      sum_up += wit.r[y];
    }
    const double span = sum_up - sum_low;
    const double theta = span > 0.0 ? (1.0 - sum_low) / span : 0.0;
    for (size_t y = 0; y < ny; ++y)
      wit.q[x * ny + y] = p.px(x) * (low[y] + theta * (wit.r[y] - low[y]));
  }

  for (double ry : wit.r) wit.value += ry;

  // Re-verify every partial-program constraint on the assembled point.
  double res = 0.0;
  double t_mass = 0.0;
  for (size_t x = 0; x < nx; ++x) {
    double q_row = 0.0;
    for (size_t y = 0; y < ny; ++y) {
      const size_t i = x * ny + y;
      res = std::max(res, wit.q[i] - p.px(x) * wit.r[y]);
      res = std::max(res, p.p(x, y) - wit.t[i] - wit.q[i]);
      res = std::max(res, -wit.q[i]);
      res = std::max(res, -wit.t[i]);
      t_mass += wit.t[i];
      q_row += wit.q[i];
    }
    res = std::max(res, std::abs(q_row - p.px(x)));
  }
  res = std::max(res, t_mass - eps);
  wit.max_residual = res;
  return wit;
}

}  // namespace minent
