#include "minent/asympt.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "minent/numerics.hpp"
#include "minent/psme.hpp"

namespace minent {

double expand(const ExpansionSpec& spec) {
  if (!(spec.v >= 0.0)) throw std::domain_error("expand: variance must be >= 0");
  if (!(spec.eps > 0.0 && spec.eps < 1.0)) throw std::domain_error("expand: eps must lie in (0, 1)");
  if (spec.n < 1) throw std::domain_error("expand: n must be >= 1");

  const double n = static_cast<double>(spec.n);
  double arg = spec.eps;
  double sign = 1.0;
  switch (spec.variant) {
    case Expansion::Beta:
      sign = -1.0;
      break;
    case Expansion::SpectrumLower:
      break;
    case Expansion::SpectrumUpper:
      sign = -1.0;
      break;
    case Expansion::PartialPure:
    case Expansion::PartialPureThird:
      arg = std::sqrt(1.0 - spec.eps * spec.eps);
      break;
    case Expansion::Compression:
      arg = std::sqrt(1.0 - spec.eps);
      break;
  }
  double value = n * spec.h;
  if (spec.v > 0.0) value += sign * std::sqrt(n * spec.v) * normal_quantile(arg);
  if (spec.variant == Expansion::PartialPureThird) value -= 0.5 * std::log2(n);
  return value;
}

double direct_achievability(const SortedSpectrum& spec, double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("direct_achievability: eps must lie in (0, 1)");
  const double smoothing = 1.0 - std::sqrt(1.0 - eps);
  const double gamma = -spec.d_lower(smoothing);
  // Keep the classes with log2 p >= -gamma; their count is the compressed dimension.
  std::vector<double> kept;
  for (size_t k = 0; k < spec.num_classes(); ++k)
    if (spec.log2_prob(k) >= -gamma) kept.push_back(spec.log2_mult(k));
  if (kept.empty()) return 0.0;
  return log_sum_exp_log2(kept);
}

DlConverse dl_converse(const SortedSpectrum& spec, double eps, const std::vector<double>& eta_grid) {
  if (eta_grid.empty()) throw std::domain_error("dl_converse: empty eta grid");
  DlConverse best;
  best.value = -std::numeric_limits<double>::infinity();
  for (double eta : eta_grid) {
    if (!(eta > 0.0 && eps + eta < 1.0))
      throw std::domain_error("dl_converse: eta must lie in (0, 1 - eps)");
    const double value = -spec.d_lower(eps + eta) + std::log2(eta);
    if (value > best.value) {
      best.value = value;
      best.eta = eta;
    }
  }
  return best;
}

std::vector<double> default_eta_grid(double eps) {
  const double lo = 1e-6;
  const double hi = 1.0 - eps - 1e-6;
  if (!(hi > lo)) throw std::domain_error("default_eta_grid: eps leaves no room for eta");
  const int points = 200;
  std::vector<double> grid(points);
  const double step = (std::log(hi) - std::log(lo)) / (points - 1);
  for (int i = 0; i < points; ++i) grid[i] = std::exp(std::log(lo) + step * i);
  return grid;
}

CompressionCurves compression_curves(const CurveOptions& opt) {
  if (!(opt.delta > 0.0 && opt.delta < 1.0))
    throw std::domain_error("compression_curves: delta must lie in (0, 1)");
  if (!(opt.eps > 0.0 && opt.eps < 1.0))
    throw std::domain_error("compression_curves: eps must lie in (0, 1)");

  std::vector<long> grid = opt.n_grid;
  if (grid.empty())
    for (long n = 50; n <= 1000; n += 50) grid.push_back(n);

  const Distribution source({opt.delta, 1.0 - opt.delta});
  const double h = entropy(source);
  const double v = variance(source);
  const double sqrt_eps = std::sqrt(opt.eps);
  std::vector<double> eta_grid;
  if (opt.eta_override)
    eta_grid.push_back(*opt.eta_override);
  else
    eta_grid = default_eta_grid(opt.eps);

  CompressionCurves curves;
  curves.delta = opt.delta;
  curves.eps = opt.eps;
  curves.rows.reserve(grid.size());
  for (long n : grid) {
    if (n < 1) throw std::domain_error("compression_curves: n grid entries must be >= 1");
    const SortedSpectrum spec = SortedSpectrum::from(iid_product(source, n));
    CurveRow row;
    row.n = n;
    const double nn = static_cast<double>(n);
    row.qp_converse = solve_qp(spec, sqrt_eps).log2_f.log2() / nn;
    const DlConverse dl = dl_converse(spec, opt.eps, eta_grid);
    row.dl_converse = dl.value / nn;
    row.dl_eta = dl.eta;
    row.is_achiev = -spec.d_lower(1.0 - std::sqrt(1.0 - opt.eps)) / nn;
    row.direct_achiev = direct_achievability(spec, opt.eps) / nn;
    row.second_order = expand({h, v, opt.eps, n, Expansion::Compression}) / nn;
    curves.rows.push_back(row);
  }
  return curves;
}

namespace {

void put(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  os << buf;
}

}  // namespace

void CompressionCurves::write_csv(std::ostream& os) const {
  os << "n,qp_converse,dl_converse,is_achiev,direct_achiev,second_order\n";
  for (const CurveRow& r : rows) {
    os << r.n << ',';
    put(os, r.qp_converse);
    os << ',';
    put(os, r.dl_converse);
    os << ',';
    put(os, r.is_achiev);
    os << ',';
    put(os, r.direct_achiev);
    os << ',';
    put(os, r.second_order);
    os << '\n';
  }
}

void CompressionCurves::write_dat(std::ostream& os) const {
  for (const CurveRow& r : rows) {
    os << r.n << ' ';
    put(os, r.qp_converse);
    os << ' ';
    put(os, r.second_order);
    os << ' ';
    put(os, r.dl_converse);
    os << ' ';
    put(os, r.is_achiev);
    os << ' ';
    put(os, r.direct_achiev);
    os << '\n';
  }
}

}  // namespace minent
