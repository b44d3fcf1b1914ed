#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace minent {

/// Joint probability table P(x, y) with cached marginals. Entries must be
/// nonnegative and sum to 1 within 1e-12.
class JointDistribution {
 public:
  JointDistribution(size_t nx, size_t ny, std::vector<double> table);

  /// Parses a CSV matrix: one row of comma-separated entries per line.
  static JointDistribution parse_csv(const std::string& text);

  size_t nx() const { return nx_; }
  size_t ny() const { return ny_; }
  double p(size_t x, size_t y) const { return table_[x * ny_ + y]; }
  double px(size_t x) const { return px_[x]; }
  double py(size_t y) const { return py_[y]; }
  const std::vector<double>& table() const { return table_; }

 private:
  size_t nx_, ny_;
  std::vector<double> table_;
  std::vector<double> px_, py_;
};

enum class SmoothProgram {
  PartialTrace,
  GlobalTrace,
  PartialPurified,
  GlobalPurified,
  ImaxPartial,
  ImaxGlobal,
};

/// Feasible point of one of the smoothing programs, with its re-checked
/// worst constraint residual.
struct SmoothingWitness {
  SmoothProgram program;
  std::vector<double> s_table;  // sigma / S / Q depending on the program
  std::vector<double> w_table;  // W or T
  double lambda = 0.0;
  double max_residual = 0.0;
};

struct TraceSmoothResult {
  double lambda = 0.0;
  SmoothingWitness witness;
};

/// Relaxed trace-distance smoothing: min lambda with lambda 1 (x) P_Y >=
/// P - W and Tr W <= eps. Solved exactly by scanning the breakpoints of the
/// minimal removed mass as a function of lambda. The returned witness
/// S = P - W is feasible for the partial (and stricter) programs as well.
TraceSmoothResult hmin_trace_relaxed(const JointDistribution& p, double eps);

enum class SmoothMode { Partial, Global };

/// Exact LP value of the trace-distance smoothed conditional min-entropy,
/// partial (sum_x S(x,y) <= P(y)) or global (Tr S <= 1) flavor.
double hmin_trace_lp(const JointDistribution& p, double eps, SmoothMode mode);

inline double hmin_trace_partial_lp(const JointDistribution& p, double eps) {
  return hmin_trace_lp(p, eps, SmoothMode::Partial);
}

/// Purified-distance smoothing restricted to classical (diagonal) smoothing
/// states: min lambda with S(x,y) <= lambda P(y), fidelity overlap at least
/// sqrt(1 - eps^2), and the mode's budget constraints. The inner fidelity
/// maximization is a water-filling allocation per coupled constraint group.
double hmin_purified_classical(const JointDistribution& p, double eps, SmoothMode mode);

/// Inner step of the purified smoothing, exposed for the oracle comparison:
/// best achievable overlap sum sqrt(P S) at a given lambda.
double purified_best_overlap(const JointDistribution& p, double lambda, SmoothMode mode);

struct ImaxResult {
  double value = 0.0;           // Tr R at the optimum
  std::vector<double> q, t;     // nx * ny tables
  std::vector<double> r;        // ny marginal witness
};

/// Globally smoothed max-mutual-information LP.
ImaxResult imax_global_lp(const JointDistribution& p, double eps);

/// Independent LP solve of the partial program (Q_X = P_X).
ImaxResult imax_partial_lp(const JointDistribution& p, double eps);

struct ImaxPartialWitness {
  std::vector<double> q, t, r;
  double value = 0.0;
  double max_residual = 0.0;  // worst partial-program violation
};

/// Rebuilds a feasible partial witness from a global optimum: clips T to P,
/// then interpolates each conditional Q row between the clipped lower vector
/// and R. Objective value is unchanged, certifying partial = global.
ImaxPartialWitness imax_partial_from_global(const JointDistribution& p, double eps,
                                            const ImaxResult& global);

}  // namespace minent
