#pragma once

#include <string>
#include <vector>

#include "minent/dist.hpp"
#include "minent/log_weight.hpp"
#include "minent/spectrum.hpp"

namespace minent {

/// Solution of the single-variable reduction of the smoothing program
/// min sum g_x^2 over 0 <= g_x <= 1 with sum g_x p_x >= sqrt(1 - eps^2).
/// The optimizer is g_x = min(1, a* p_x / 2) for a single multiplier a*.
struct QpSolution {
  double log2_half_a = 0.0;   // log2(a*/2); +inf for the eps = 0 limit
  LogWeight log2_f;           // optimal value f
  double achieved_overlap = 0.0;  // sum g_x p_x, meets sqrt(1 - eps^2)
  double log2_support = 0.0;  // log2 of the support size
  bool flat = false;          // closed-form path for a one-class spectrum
};

QpSolution solve_qp(const SortedSpectrum& spec, double eps);
QpSolution solve_qp(const Distribution& p, double eps);
QpSolution solve_qp(const ClassEnsemble& e, double eps);

/// -H of the partially smoothed conditional min-entropy, i.e. log2 f.
inline double neg_hmin_partial(const QpSolution& s) { return s.log2_f.log2(); }

/// Smoothing vector recovered from the multiplier, one entry per outcome of
/// an explicit distribution.
std::vector<double> smoothing_vector(const Distribution& p, const QpSolution& sol);

/// Projected-gradient reference solver for the same program on explicit
/// distributions of a few outcomes. Test oracle only.
struct QpOracleResult {
  double value = 0.0;
  std::vector<double> g;
  bool converged = false;
  int iterations = 0;
};
QpOracleResult qp_oracle(const Distribution& p, double eps, int starts = 8, int max_iter = 20000);

/// Primal/dual certificate pair for the semidefinite form of the program.
/// Primal: theta = |g><g|, lambda = <g|g>. Dual: (mu, K, T) with value
/// mu (1 - eps^2) - Tr K. Zero gap plus feasibility certifies optimality.
struct Certificate {
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap_rel = 0.0;           // |primal - dual| / max(1, primal)
  double max_dual_eig = 0.0;      // largest eigenvalue of mu psi - P(K) - T
  double primal_residual = 0.0;   // worst primal constraint violation
  double dual_trace_t = 0.0;      // Tr T (feasible when <= 1)
  double lambda = 0.0;
  double mu = 0.0;
  std::vector<double> g;
  std::vector<double> k_diag;
  bool feasible = false;
  std::string failure;  // names the first violated constraint, empty if none
};

struct CertTolerances {
  double residual = 1e-9;
  double dual_eig = 1e-9;
  double gap_rel = 1e-8;
};

/// Builds and checks the certificate for an explicit distribution (d <= 64).
Certificate build_certificate(const Distribution& p, double eps, const QpSolution& sol,
                              const CertTolerances& tol = {});

/// eta* = (a*/2) sum of mult_k p_k^2 over classes below the clip threshold.
/// sqrt(n) * eta* staying bounded is the diagnostic of interest.
double eta_diagnostic(const SortedSpectrum& spec, const QpSolution& sol);

}  // namespace minent
