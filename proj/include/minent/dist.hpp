#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "minent/log_weight.hpp"

namespace minent {

/// Thrown when an i.i.d. expansion would exceed the composition budget.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Explicit finite probability vector. Entries must be nonnegative and sum to
/// 1 within 1e-12; zero-probability outcomes are dropped on construction.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probs);

  /// Parses a comma-separated decimal list, e.g. "0.9,0.1".
  static Distribution parse(const std::string& text);

  const std::vector<double>& probs() const { return probs_; }
  size_t size() const { return probs_.size(); }
  double operator[](size_t i) const { return probs_[i]; }

 private:
  std::vector<double> probs_;
};

/// Shannon entropy in bits.
double entropy(const Distribution& p);

/// Varentropy sum p (log2 p + H)^2, in bits squared.
double variance(const Distribution& p);

/// One empirical type of an i.i.d. product: the shared per-element
/// log-probability and how many outcomes carry it.
struct TypeClass {
  double log2_prob = 0.0;
  double log2_mult = 0.0;
};

/// i.i.d. product of a base distribution represented by type classes, sorted
/// by log2_prob strictly descending (equal-probability classes merged).
class ClassEnsemble {
 public:
  ClassEnsemble(std::vector<TypeClass> classes, long n);

  const std::vector<TypeClass>& classes() const { return classes_; }
  long n() const { return n_; }

  /// log2 of the total mass; 0 up to accumulated rounding.
  double total_log2_mass() const;

 private:
  std::vector<TypeClass> classes_;
  long n_;
};

/// Expands p^(x)n into type classes, one per composition of n over the
/// support. Throws CapacityError when the composition count would exceed
/// 10^6 and std::domain_error for n < 1.
ClassEnsemble iid_product(const Distribution& p, long n);

}  // namespace minent
