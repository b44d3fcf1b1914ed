#include "minent/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "minent/log_weight.hpp"

namespace minent {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;
constexpr double kSqrt2 = 1.4142135623730950488016887242096981;
constexpr double kInvSqrt2Pi = 0.3989422804014326779399460599343819;
}  // namespace

LogWeight log_sum_exp(std::span<const LogWeight> terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (const LogWeight& t : terms) hi = std::max(hi, t.log2());
  if (std::isinf(hi) && hi < 0) return LogWeight::zero();
  double acc = 0.0;
  for (const LogWeight& t : terms) acc += std::exp2(t.log2() - hi);
  return LogWeight::from_log2(hi + std::log2(acc));
}

double log_sum_exp_log2(std::span<const double> log2_terms) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double t : log2_terms) hi = std::max(hi, t);
  if (std::isinf(hi) && hi < 0) return hi;
  double acc = 0.0;
  for (double t : log2_terms) acc += std::exp2(t - hi);
  return hi + std::log2(acc);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must lie in (0, 1)");

  // Acklam's rational approximation, ~1.15e-9 relative before refinement.
  static constexpr double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                  -2.759285104469687e+02, 1.383577518672690e+02,
                                  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                  -1.556989798598866e+02, 6.680131188771972e+01,
                                  -1.328068155288572e+01};
  static constexpr double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                  -2.400758277161838e+00, -2.549732539343734e+00,
                                  4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                                  2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  double x;
  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - p_low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }

  // One Halley step on Phi(x) - p = 0.
  const double err = normal_cdf(x) - p;
  const double pdf = kInvSqrt2Pi * std::exp(-0.5 * x * x);
  if (pdf > 0.0) {
    const double u = err / pdf;
    x -= u / (1.0 + 0.5 * x * u);
  }
  return x;
}

double bisect_monotone(const std::function<double(double)>& f, double target, double lo, double hi,
                       double tol) {
  if (!(lo <= hi)) throw BracketError("bisect_monotone: empty bracket");
  double flo = f(lo);
  double fhi = f(hi);
  const bool increasing = fhi >= flo;
  const double fmin = std::min(flo, fhi);
  const double fmax = std::max(flo, fhi);
  // Tiny slack so targets sitting exactly on an endpoint value survive rounding.
  const double slack = 16.0 * std::numeric_limits<double>::epsilon() *
                       (1.0 + std::max(std::abs(fmin), std::abs(fmax)));
  if (target < fmin - slack || target > fmax + slack)
    throw BracketError("bisect_monotone: target outside f(bracket)");

  const double floor_width = 4.0 * std::numeric_limits<double>::epsilon() *
                             std::max(1.0, std::max(std::abs(lo), std::abs(hi)));
  double mid = 0.5 * (lo + hi);
  while (hi - lo > floor_width) {
    mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm < fmin - slack || fm > fmax + slack)
      throw BracketError("bisect_monotone: nonmonotone probe detected");
    if (std::abs(fm - target) <= tol) return mid;
    if ((fm < target) == increasing)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

void check_symmetric(const SmallMatrix& m) {
  if (m.dim < 0 || m.dim > 64) throw std::domain_error("eigenvalues_symmetric: dimension must be <= 64");
  if (m.entries.size() != static_cast<size_t>(m.dim) * m.dim)
    throw std::domain_error("eigenvalues_symmetric: entry count does not match dimension");
  double scale = 0.0;
  for (double v : m.entries) scale = std::max(scale, std::abs(v));
  for (int i = 0; i < m.dim; ++i)
    for (int j = i + 1; j < m.dim; ++j)
      if (std::abs(m.at(i, j) - m.at(j, i)) > 1e-14 * std::max(scale, 1e-300))
        throw std::domain_error("eigenvalues_symmetric: matrix is not symmetric");
}

}  // namespace

std::vector<double> eigenvalues_symmetric(const SmallMatrix& m) {
  check_symmetric(m);
  const int n = m.dim;
  if (n == 0) return {};
  std::vector<double> a = m.entries;
  auto at = [&](int i, int j) -> double& { return a[static_cast<size_t>(i) * n + j]; };

  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) return std::vector<double>(n, 0.0);
  const double stop = 1e-14 * scale;

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(at(p, q)));
    if (off <= stop) break;

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = at(p, q);
        if (std::abs(apq) <= 1e-300) continue;
        const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double cs = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * cs;
        const double tau = sn / (1.0 + cs);

        const double app = at(p, p), aqq = at(q, q);
        at(p, p) = app - t * apq;
        at(q, q) = aqq + t * apq;
        at(p, q) = at(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = at(r, p), arq = at(r, q);
          at(r, p) = at(p, r) = arp - sn * (arq + tau * arp);
          at(r, q) = at(q, r) = arq + sn * (arp - tau * arq);
        }
      }
    }
  }

  std::vector<double> eig(n);
  for (int i = 0; i < n; ++i) eig[i] = at(i, i);
  return eig;
}

double max_eigenvalue_symmetric(const SmallMatrix& m) {
  if (m.dim == 0) throw std::domain_error("max_eigenvalue_symmetric: empty matrix");
  const std::vector<double> eig = eigenvalues_symmetric(m);
  return *std::max_element(eig.begin(), eig.end());
}

}  // namespace minent
