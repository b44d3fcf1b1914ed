#include "minent/psme.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "minent/numerics.hpp"

namespace minent {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Overlap sum_k mult_k p_k min(2^{t + lp_k}, 1) at t = log2(a/2), in [0, 1].
double overlap_at(const SortedSpectrum& s, double t) {
  double acc = -kInf;
  for (size_t k = 0; k < s.num_classes(); ++k) {
    const double lp = s.log2_prob(k);
    const double term = s.log2_mult(k) + lp + std::min(t + lp, 0.0);
    const double hi = std::max(acc, term);
    acc = hi + std::log1p(std::exp2(std::min(acc, term) - hi)) / 0.6931471805599453;
  }
  return std::exp2(acc);
}

// d(overlap)/dt / ln 2 = (a/2) sum of mult p^2 below the clip threshold.
double slope_weight(const SortedSpectrum& s, double t) {
  std::vector<double> terms;
  terms.reserve(s.num_classes());
  for (size_t k = 0; k < s.num_classes(); ++k) {
    const double lp = s.log2_prob(k);
    if (t + lp < 0.0) terms.push_back(s.log2_mult(k) + 2.0 * lp + t);
  }
  return std::exp2(log_sum_exp_log2(terms));
}

// f = (count above threshold) + sum below of mult (a p / 2)^2, assembled from
// positive terms only so no precision is lost at large n.
LogWeight value_at(const SortedSpectrum& s, double t) {
  std::vector<double> terms;
  terms.reserve(s.num_classes());
  for (size_t k = 0; k < s.num_classes(); ++k) {
    const double lp = s.log2_prob(k);
    if (t + lp >= 0.0)
      terms.push_back(s.log2_mult(k));
    else
      terms.push_back(s.log2_mult(k) + 2.0 * (t + lp));
  }
  return LogWeight::from_log2(log_sum_exp_log2(terms));
}

}  // namespace

QpSolution solve_qp(const SortedSpectrum& spec, double eps) {
  if (!(eps >= 0.0 && eps < 1.0)) throw std::domain_error("solve_qp: eps must lie in [0, 1)");
  QpSolution sol;
  sol.log2_support = spec.log2_support_size();

  if (eps == 0.0) {
    // Limit a -> inf: the overlap constraint forces g = 1 on the support.
    sol.log2_half_a = kInf;
    sol.log2_f = LogWeight::from_log2(sol.log2_support);
    sol.achieved_overlap = spec.total_mass();
    return sol;
  }

  const double target = std::sqrt(1.0 - eps * eps);

  if (spec.num_classes() == 1) {
    // Flat spectrum: every g_x equals the overlap target.
    const double lp = spec.log2_prob(0);
    sol.flat = true;
    sol.log2_half_a = std::log2(target) - lp;
    sol.log2_f = LogWeight::from_log2(sol.log2_support + std::log2(1.0 - eps * eps));
    sol.achieved_overlap = target;
    return sol;
  }

  // Bisect t = log2(a/2); the overlap is nondecreasing in t, 0 at the far
  // left of the bracket and total mass at the far right.
  double lo = -spec.log2_prob(0) - 64.0;
  double hi = -spec.log2_prob(spec.num_classes() - 1) + 64.0;
  double t = 0.5 * (lo + hi);
  for (int iter = 0; iter < 240 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo) + std::abs(hi));
       ++iter) {
    t = 0.5 * (lo + hi);
    if (overlap_at(spec, t) < target)
      lo = t;
    else
      hi = t;
  }

  // Newton polish on the piecewise-exponential overlap, clamped to the
  // isolating bracket; drives |overlap - target| to machine precision.
  for (int step = 0; step < 4; ++step) {
    const double h = overlap_at(spec, t);
    const double w = slope_weight(spec, t) * 0.6931471805599453;
    if (w <= 0.0) break;
    double t_next = t + (target - h) / w;
    t_next = std::clamp(t_next, lo, hi);
    if (std::abs(overlap_at(spec, t_next) - target) < std::abs(h - target))
      t = t_next;
    else
      break;
  }

  sol.log2_half_a = t;
  sol.log2_f = value_at(spec, t);
  sol.achieved_overlap = overlap_at(spec, t);
  return sol;
}

QpSolution solve_qp(const Distribution& p, double eps) { return solve_qp(SortedSpectrum::from(p), eps); }

QpSolution solve_qp(const ClassEnsemble& e, double eps) { return solve_qp(SortedSpectrum::from(e), eps); }

std::vector<double> smoothing_vector(const Distribution& p, const QpSolution& sol) {
  std::vector<double> g(p.size());
  for (size_t x = 0; x < p.size(); ++x)
    g[x] = std::isinf(sol.log2_half_a) ? 1.0
                                       : std::min(1.0, std::exp2(sol.log2_half_a + std::log2(p[x])));
  return g;
}

namespace {

// Euclidean projection onto the box [0,1]^d intersected with p.g >= target:
// g = clip(z + nu p) with the smallest nu >= 0 restoring the overlap.
std::vector<double> project_box_halfspace(const std::vector<double>& z, const std::vector<double>& p,
                                          double target) {
  const size_t d = z.size();
  std::vector<double> g(d);
  auto fill = [&](double nu) {
    double dot = 0.0;
    for (size_t i = 0; i < d; ++i) {
      g[i] = std::clamp(z[i] + nu * p[i], 0.0, 1.0);
      dot += g[i] * p[i];
    }
    return dot;
  };
  if (fill(0.0) >= target) return g;
  double lo = 0.0, hi = 1.0;
  while (fill(hi) < target && hi < 1e18) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (fill(mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  fill(hi);
  return g;
}

}  // namespace

QpOracleResult qp_oracle(const Distribution& p, double eps, int starts, int max_iter) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("qp_oracle: eps must lie in (0, 1)");
  const size_t d = p.size();
  const double target = std::sqrt(1.0 - eps * eps);

  QpOracleResult best;
  best.value = kInf;
  std::mt19937_64 rng(0x9e3779b97f4a7c15ull);
  for (int s = 0; s < starts; ++s) {
    std::vector<double> g(d);
    for (size_t i = 0; i < d; ++i)
      g[i] = (s == 0) ? 1.0 : static_cast<double>(rng() >> 11) * 0x1.0p-53;
    g = project_box_halfspace(g, p.probs(), target);

    // Gradient of sum g^2 is 2g; with step 0.4 the iteration contracts
    // geometrically toward the constrained minimizer.
    constexpr double step = 0.4;
    int iter = 0;
    bool converged = false;
    std::vector<double> next(d);
    for (; iter < max_iter; ++iter) {
      for (size_t i = 0; i < d; ++i) next[i] = g[i] * (1.0 - 2.0 * step);
      next = project_box_halfspace(next, p.probs(), target);
      double delta = 0.0;
      for (size_t i = 0; i < d; ++i) delta = std::max(delta, std::abs(next[i] - g[i]));
      g.swap(next);
      if (delta <= 1e-13) {
        converged = true;
        break;
      }
    }
    double value = 0.0;
    for (double gi : g) value += gi * gi;
    if (value < best.value) {
      best.value = value;
      best.g = g;
      best.iterations = iter;
      best.converged = converged;
    }
  }
  return best;
}

Certificate build_certificate(const Distribution& p, double eps, const QpSolution& sol,
                              const CertTolerances& tol) {
  const size_t d = p.size();
  if (d > 64) throw std::domain_error("build_certificate: dense certificate limited to d <= 64");
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("build_certificate: eps must lie in (0, 1)");

  const double target = std::sqrt(1.0 - eps * eps);
  const double half_a = std::exp2(sol.log2_half_a);

  Certificate cert;
  cert.g = smoothing_vector(p, sol);
  double lambda = 0.0, overlap = 0.0;
  for (size_t x = 0; x < d; ++x) {
    lambda += cert.g[x] * cert.g[x];
    overlap += cert.g[x] * p[x];
  }
  cert.lambda = lambda;
  cert.primal_value = lambda;

  // Primal feasibility: pinched theta below the identity and overlap met.
  double primal_res = 0.0;
  for (double gx : cert.g) primal_res = std::max(primal_res, gx * gx - 1.0);
  primal_res = std::max(primal_res, target - overlap);
  cert.primal_residual = primal_res;

  // Dual point from the same multiplier.
  cert.mu = half_a / target;
  cert.k_diag.resize(d);
  for (size_t x = 0; x < d; ++x) {
    const double ap = half_a * p[x];
    cert.k_diag[x] = ap >= 1.0 ? ap - 1.0 : 0.0;
  }
  double trace_k = 0.0;
  for (double kx : cert.k_diag) trace_k += kx;
  cert.dual_value = cert.mu * (1.0 - eps * eps) - trace_k;

  // Dual feasibility: mu psi - P(K) - T has no positive eigenvalue, Tr T <= 1.
  SmallMatrix m = SmallMatrix::zeros(static_cast<int>(d));
  for (size_t x = 0; x < d; ++x) {
    for (size_t y = x; y < d; ++y) {
      double v = cert.mu * (p[x] * p[y]) - cert.g[x] * cert.g[y] / lambda;
      if (x == y) v -= cert.k_diag[x];
      m.at(static_cast<int>(x), static_cast<int>(y)) = v;
      m.at(static_cast<int>(y), static_cast<int>(x)) = v;
    }
  }
  cert.max_dual_eig = max_eigenvalue_symmetric(m);
  cert.dual_trace_t = 1.0;

  cert.gap_rel = std::abs(cert.primal_value - cert.dual_value) / std::max(1.0, cert.primal_value);

  cert.feasible = true;
  if (cert.primal_residual > tol.residual) {
    cert.feasible = false;
    cert.failure = "primal constraint violated";
  } else if (cert.max_dual_eig > tol.dual_eig) {
    cert.feasible = false;
    cert.failure = "dual matrix has a positive eigenvalue";
  } else if (cert.dual_trace_t > 1.0 + tol.residual) {
    cert.feasible = false;
    cert.failure = "dual trace constraint violated";
  } else if (cert.gap_rel > tol.gap_rel) {
    cert.feasible = false;
    cert.failure = "duality gap above tolerance";
  }
  return cert;
}

double eta_diagnostic(const SortedSpectrum& spec, const QpSolution& sol) {
  if (std::isinf(sol.log2_half_a) && sol.log2_half_a > 0) return 0.0;  // eps = 0, all clipped
  return slope_weight(spec, sol.log2_half_a);
}

}  // namespace minent
