#pragma once

#include <vector>

#include "minent/dist.hpp"
#include "minent/log_weight.hpp"

namespace minent {

/// Canonical sorted view of a classical spectrum: (probability, multiplicity)
/// classes in strictly decreasing probability order with log-domain prefix
/// sums of mass and outcome count. Backs the hypothesis-testing and
/// information-spectrum evaluations.
class SortedSpectrum {
 public:
  static SortedSpectrum from(const Distribution& p);
  static SortedSpectrum from(const ClassEnsemble& e);

  size_t num_classes() const { return log2_prob_.size(); }
  double log2_prob(size_t k) const { return log2_prob_[k]; }
  double log2_mult(size_t k) const { return log2_mult_[k]; }
  /// log2 of the number of outcomes in classes 0..k.
  double prefix_log2_count(size_t k) const { return cum_log2_count_[k]; }
  /// log2 of the probability mass in classes 0..k.
  double prefix_log2_mass(size_t k) const { return cum_log2_mass_[k]; }
  double log2_support_size() const { return cum_log2_count_.back(); }
  double total_mass() const;

  /// Minimal measure of a test with success probability alpha against the
  /// spectrum: outcomes enter by decreasing probability, the last one
  /// fractionally. Throws std::domain_error unless 0 < alpha <= total mass.
  LogWeight beta(double alpha) const;

  /// Tail functional sum_k mult_k * max(0, p_k - gamma) for gamma = 2^log2_gamma.
  double e_gamma(double log2_gamma) const;

  /// The gamma where e_gamma crosses 1 - eps (largest gamma still above).
  double d_lower(double eps) const;
  /// The gamma where e_gamma crosses eps (smallest gamma already below).
  double d_upper(double eps) const;

 private:
  SortedSpectrum(std::vector<double> lp, std::vector<double> lm);
  double solve_e_gamma(double target) const;

  std::vector<double> log2_prob_;       // strictly decreasing
  std::vector<double> log2_mult_;
  std::vector<double> cum_log2_count_;  // prefix log2 outcome counts
  std::vector<double> cum_log2_mass_;   // prefix log2 masses
};

}  // namespace minent
