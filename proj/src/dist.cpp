#include "minent/dist.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

namespace minent {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;
}

Distribution::Distribution(std::vector<double> probs) {
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw std::invalid_argument("Distribution: entries must be nonnegative");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12)
    throw std::invalid_argument("Distribution: entries must sum to 1 (got " + std::to_string(sum) + ")");
  probs_.reserve(probs.size());
  for (double p : probs)
    if (p > 0.0) probs_.push_back(p);
  if (probs_.empty()) throw std::invalid_argument("Distribution: empty support");
}

Distribution Distribution::parse(const std::string& text) {
  std::vector<double> probs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    const double v = std::stod(item, &pos);
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw std::invalid_argument("Distribution: bad entry '" + item + "'");
    probs.push_back(v);
  }
  return Distribution(probs);
}

double entropy(const Distribution& p) {
  double h = 0.0;
  for (double q : p.probs()) h -= q * std::log2(q);
  return h;
}

double variance(const Distribution& p) {
  const double h = entropy(p);
  double v = 0.0;
  for (double q : p.probs()) {
    const double t = std::log2(q) + h;
    v += q * t * t;
  }
  return v;
}

ClassEnsemble::ClassEnsemble(std::vector<TypeClass> classes, long n) : classes_(std::move(classes)), n_(n) {
  std::sort(classes_.begin(), classes_.end(),
            [](const TypeClass& a, const TypeClass& b) { return a.log2_prob > b.log2_prob; });
  // Merge exact probability ties so the class list is strictly decreasing.
  std::vector<TypeClass> merged;
  merged.reserve(classes_.size());
  for (const TypeClass& c : classes_) {
    if (!merged.empty() && merged.back().log2_prob == c.log2_prob) {
      const LogWeight m = LogWeight::from_log2(merged.back().log2_mult) + LogWeight::from_log2(c.log2_mult);
      merged.back().log2_mult = m.log2();
    } else {
      merged.push_back(c);
    }
  }
  classes_ = std::move(merged);
}

double ClassEnsemble::total_log2_mass() const {
  std::vector<double> terms;
  terms.reserve(classes_.size());
  for (const TypeClass& c : classes_) terms.push_back(c.log2_prob + c.log2_mult);
  return log_sum_exp_log2(terms);
}

namespace {

// C(n + d - 1, d - 1) without overflow; caps at just above the budget.
double composition_count(long n, size_t d) {
  double count = 1.0;
  for (size_t i = 1; i < d; ++i) {
    count *= static_cast<double>(n + static_cast<long>(i)) / static_cast<double>(i);
    if (count > 2e6) return count;
  }
  return count;
}

}  // namespace

ClassEnsemble iid_product(const Distribution& p, long n) {
  if (n < 1) throw std::domain_error("iid_product: n must be >= 1");
  const size_t d = p.size();
  if (composition_count(n, d) > 1e6)
    throw CapacityError("iid_product: composition count exceeds 10^6");

  std::vector<double> log2p(d);
  for (size_t i = 0; i < d; ++i) log2p[i] = std::log2(p[i]);
  const double lg_n = std::lgamma(static_cast<double>(n) + 1.0);

  std::vector<TypeClass> classes;
  std::vector<long> counts(d, 0);
  // Depth-first over compositions (k_0, ..., k_{d-1}) with sum n.
  auto emit = [&]() {
    double lp = 0.0;
    double lg_denom = 0.0;
    for (size_t i = 0; i < d; ++i) {
      lp += static_cast<double>(counts[i]) * log2p[i];
      lg_denom += std::lgamma(static_cast<double>(counts[i]) + 1.0);
    }
    classes.push_back(TypeClass{lp, (lg_n - lg_denom) / kLn2});
  };
  auto recurse = [&](auto&& self, size_t idx, long remaining) -> void {
    if (idx + 1 == d) {
      counts[idx] = remaining;
      emit();
      counts[idx] = 0;
      return;
    }
    for (long k = 0; k <= remaining; ++k) {
      counts[idx] = k;
      self(self, idx + 1, remaining - k);
    }
    counts[idx] = 0;
  };
  recurse(recurse, 0, n);
  return ClassEnsemble(std::move(classes), n);
}

}  // namespace minent
