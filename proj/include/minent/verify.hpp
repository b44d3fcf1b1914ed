#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "minent/classical_smooth.hpp"
#include "minent/dist.hpp"

namespace minent::verify {

struct SuiteReport {
  std::string name;
  int instances = 0;
  bool passed = true;
  double worst = 0.0;  // headline residual for the suite
  std::vector<std::string> notes;
  std::vector<std::string> failures;
  double seconds = 0.0;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      passed = false;
      failures.push_back(what);
    }
  }
  void track(double residual) {
    if (residual > worst) worst = residual;
  }
};

struct Options {
  std::uint64_t seed = 42;
  int trials = 200;
};

/// Deterministic generator used by all randomized suites; identical output
/// for identical seeds on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next() {
    // xorshift* keeps the byte-identical-output contract out of the hands
    // of the standard library's unspecified distributions.
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545f4914f6cdd1dull;
  }
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  size_t index(size_t n) { return static_cast<size_t>(uniform() * static_cast<double>(n)) % n; }

 private:
  std::uint64_t state_;
};

Distribution random_distribution(Rng& rng, size_t max_d);
JointDistribution random_joint(Rng& rng, size_t max_x, size_t max_y, bool allow_zeros);

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, const Options& opt);
std::vector<SuiteReport> run_all(const Options& opt);

/// Brute-force minimizer of the two-outcome smoothing program on a g-grid of
/// the given resolution. Test oracle for the closed-form solver.
double qp_grid_oracle_2d(const Distribution& p, double eps, double resolution);

/// Grid-search value of the classical purified smoothing program on 2x2
/// joints: all allocations on an s-lattice of the given resolution.
double purified_grid_oracle_lambda(const JointDistribution& p, double eps, SmoothMode mode,
                                   double resolution);

/// Lattice maximum of the inner fidelity at fixed lambda (same oracle).
double purified_grid_oracle_overlap(const JointDistribution& p, double lambda, SmoothMode mode,
                                    double resolution);

}  // namespace minent::verify
