#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace minent {

/// Nonnegative real stored as a base-2 logarithm. The additive identity
/// (exact zero) is encoded as -infinity. All large-n mass and multiplicity
/// arithmetic in this library is carried out in this representation.
class LogWeight {
 public:
  constexpr LogWeight() = default;

  static constexpr LogWeight zero() { return LogWeight(); }
  static constexpr LogWeight one() { return from_log2(0.0); }

  static constexpr LogWeight from_log2(double v) {
    LogWeight w;
    w.log2_ = v;
    return w;
  }

  /// x must be >= 0; x == 0 maps to the zero element.
  static LogWeight from_linear(double x) {
    return from_log2(x > 0.0 ? std::log2(x) : -std::numeric_limits<double>::infinity());
  }

  constexpr double log2() const { return log2_; }
  double linear() const { return std::exp2(log2_); }
  constexpr bool is_zero() const { return log2_ == -std::numeric_limits<double>::infinity(); }

  /// Log-domain sum (log-sum-exp of two terms).
  friend LogWeight operator+(LogWeight a, LogWeight b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = a.log2_ > b.log2_ ? a.log2_ : b.log2_;
    const double lo = a.log2_ > b.log2_ ? b.log2_ : a.log2_;
    return from_log2(hi + std::log1p(std::exp2(lo - hi)) / kLn2);
  }

  friend LogWeight operator*(LogWeight a, LogWeight b) {
    if (a.is_zero() || b.is_zero()) return zero();
    return from_log2(a.log2_ + b.log2_);
  }

  friend LogWeight operator/(LogWeight a, LogWeight b) {
    if (a.is_zero()) return zero();
    return from_log2(a.log2_ - b.log2_);
  }

  friend constexpr bool operator==(LogWeight a, LogWeight b) { return a.log2_ == b.log2_; }
  friend constexpr bool operator<(LogWeight a, LogWeight b) { return a.log2_ < b.log2_; }
  friend constexpr bool operator<=(LogWeight a, LogWeight b) { return a.log2_ <= b.log2_; }
  friend constexpr bool operator>(LogWeight a, LogWeight b) { return a.log2_ > b.log2_; }
  friend constexpr bool operator>=(LogWeight a, LogWeight b) { return a.log2_ >= b.log2_; }

 private:
  static constexpr double kLn2 = 0.6931471805599453094172321214581766;
  double log2_ = -std::numeric_limits<double>::infinity();
};

/// log2(sum_i 2^{t_i}) with a max shift; the empty sum is the zero element.
LogWeight log_sum_exp(std::span<const LogWeight> terms);

/// Same on raw base-2 exponents (-inf entries are exact zeros).
double log_sum_exp_log2(std::span<const double> log2_terms);

inline LogWeight log_sum_exp(const std::vector<LogWeight>& terms) {
  return log_sum_exp(std::span<const LogWeight>(terms));
}

}  // namespace minent
