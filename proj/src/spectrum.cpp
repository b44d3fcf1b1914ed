#include "minent/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "minent/numerics.hpp"

namespace minent {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;

// log2(2^a + 2^b)
double lse2(double a, double b) {
  if (std::isinf(a) && a < 0) return b;
  if (std::isinf(b) && b < 0) return a;
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp2(std::min(a, b) - hi)) / kLn2;
}

// log2(2^lp - g) for g = 2^lg < 2^lp, stable when the two are close.
double log2_diff(double lp, double lg) { return lp + std::log1p(-std::exp2(lg - lp)) / kLn2; }

}  // namespace

SortedSpectrum::SortedSpectrum(std::vector<double> lp, std::vector<double> lm)
    : log2_prob_(std::move(lp)), log2_mult_(std::move(lm)) {
  const size_t k = log2_prob_.size();
  cum_log2_count_.resize(k);
  cum_log2_mass_.resize(k);
  double cc = -std::numeric_limits<double>::infinity();
  double cm = cc;
  for (size_t i = 0; i < k; ++i) {
    cc = lse2(cc, log2_mult_[i]);
    cm = lse2(cm, log2_mult_[i] + log2_prob_[i]);
    cum_log2_count_[i] = cc;
    cum_log2_mass_[i] = cm;
  }
}

SortedSpectrum SortedSpectrum::from(const Distribution& p) {
  std::vector<TypeClass> classes;
  classes.reserve(p.size());
  for (double q : p.probs()) classes.push_back(TypeClass{std::log2(q), 0.0});
  // ClassEnsemble canonicalizes: sorts descending and merges exact ties.
  return from(ClassEnsemble(std::move(classes), 1));
}

SortedSpectrum SortedSpectrum::from(const ClassEnsemble& e) {
  std::vector<double> lp, lm;
  lp.reserve(e.classes().size());
  lm.reserve(e.classes().size());
  for (const TypeClass& c : e.classes()) {
    lp.push_back(c.log2_prob);
    lm.push_back(c.log2_mult);
  }
  return SortedSpectrum(std::move(lp), std::move(lm));
}

double SortedSpectrum::total_mass() const { return std::exp2(cum_log2_mass_.back()); }

LogWeight SortedSpectrum::beta(double alpha) const {
  const double mass = total_mass();
  if (!(alpha > 0.0)) throw std::domain_error("beta: alpha must be positive");
  if (alpha > mass + 1e-9) throw std::domain_error("beta: alpha exceeds total mass");
  alpha = std::min(alpha, mass);

  const double log2_alpha = std::log2(alpha);
  // First class index j with prefix mass >= alpha.
  size_t j = std::lower_bound(cum_log2_mass_.begin(), cum_log2_mass_.end(), log2_alpha) -
             cum_log2_mass_.begin();
  if (j == cum_log2_mass_.size()) j = cum_log2_mass_.size() - 1;

  const double prev_mass = (j == 0) ? 0.0 : std::exp2(cum_log2_mass_[j - 1]);
  const double remainder = alpha - prev_mass;
  double log2_beta;
  if (remainder <= 0.0) {
    log2_beta = cum_log2_count_[j - 1];  // rounding put alpha exactly on the prefix
  } else {
    const double frac = std::log2(remainder) - log2_prob_[j];
    log2_beta = (j == 0) ? frac : lse2(cum_log2_count_[j - 1], frac);
  }
  return LogWeight::from_log2(log2_beta);
}

double SortedSpectrum::e_gamma(double log2_gamma) const {
  double acc = -std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < log2_prob_.size(); ++k) {
    if (log2_prob_[k] <= log2_gamma) break;  // sorted descending
    acc = lse2(acc, log2_mult_[k] + log2_diff(log2_prob_[k], log2_gamma));
  }
  return std::exp2(acc);
}

// Largest gamma with e_gamma(gamma) = target. In G = 2^gamma the functional
// is piecewise linear with breakpoints at the class probabilities:
// E(G) = M_j - G * N_j on [p_{j+1}, p_j] with M_j, N_j the prefix mass and
// count of classes above G. Scanning the breakpoints solves the crossing
// exactly; bisection in log2-gamma remains as a fallback.
double SortedSpectrum::solve_e_gamma(double target) const {
  const size_t k = log2_prob_.size();
  for (size_t j = 0; j < k; ++j) {
    const double mass_j = std::exp2(cum_log2_mass_[j]);
    const double next_lp = (j + 1 < k) ? log2_prob_[j + 1] : -std::numeric_limits<double>::infinity();
    // E at the lower end of the segment, G = p_{j+1} (or 0 for the last one).
    const double e_low =
        (j + 1 < k) ? mass_j - std::exp2(next_lp + cum_log2_count_[j]) : mass_j;
    if (e_low >= target) {
      const double diff = mass_j - target;
      if (diff <= 0.0) return next_lp;  // crossing pinned to the breakpoint by rounding
      return std::log2(diff) - cum_log2_count_[j];
    }
  }
  // target above the total mass; fall back to a bracketed search on gamma.
  return bisect_monotone([this](double lg) { return e_gamma(lg); }, target,
                         log2_prob_.back() - 64.0, log2_prob_.front(), 1e-13);
}

double SortedSpectrum::d_lower(double eps) const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("d_lower: eps must lie in (0, 1)");
  return solve_e_gamma(1.0 - eps);
}

double SortedSpectrum::d_upper(double eps) const {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("d_upper: eps must lie in (0, 1)");
  return solve_e_gamma(eps);
}

}  // namespace minent
