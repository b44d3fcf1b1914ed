#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

namespace minent {

/// Thrown by bisect_monotone when the target is not enclosed by the bracket
/// or a probe contradicts monotonicity.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Quantile of the standard normal distribution, absolute error below 1e-10
/// over (0, 1). Rational initial guess refined by one Halley step against an
/// erfc-based CDF. Throws std::domain_error outside (0, 1).
double normal_quantile(double p);

/// Standard normal CDF via erfc.
double normal_cdf(double x);

/// Finds x in [lo, hi] with |f(x) - target| <= tol for monotone f, stopping
/// once the bracket shrinks below the machine-relative floor. Throws
/// BracketError if target is outside [f(lo), f(hi)] (either orientation).
double bisect_monotone(const std::function<double(double)>& f, double target, double lo, double hi,
                       double tol);

/// Dense real symmetric matrix, row-major, dimension <= 64.
struct SmallMatrix {
  int dim = 0;
  std::vector<double> entries;  // dim*dim, row-major

  double& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
  double at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }

  static SmallMatrix zeros(int n) { return SmallMatrix{n, std::vector<double>(static_cast<size_t>(n) * n, 0.0)}; }
};

/// All eigenvalues of a symmetric matrix by cyclic Jacobi rotations,
/// unordered. Throws std::domain_error if the input is not symmetric within
/// 1e-14 * max|entry| or dim > 64.
std::vector<double> eigenvalues_symmetric(const SmallMatrix& m);

/// Largest eigenvalue; same contract as eigenvalues_symmetric.
double max_eigenvalue_symmetric(const SmallMatrix& m);

}  // namespace minent
