#include "minent/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "minent/asympt.hpp"
#include "minent/numerics.hpp"
#include "minent/psme.hpp"
#include "minent/simplex.hpp"
#include "minent/spectrum.hpp"

namespace minent::verify {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const std::vector<double> kEpsSet = {0.05, 0.1, 0.3, 0.6, 0.9};

JointDistribution counterexample_joint() {
  return JointDistribution(2, 2, {0.25, 0.25, 0.0, 0.5});
}

}  // namespace

Distribution random_distribution(Rng& rng, size_t max_d) {
  const size_t d = 1 + rng.index(max_d);
  // Entries bounded away from zero keep the certificate algebra well
  // conditioned; degenerate spectra are exercised by dedicated cases.
  std::vector<double> p(d);
  double sum = 0.0;
  for (double& v : p) {
    v = rng.uniform(0.01, 1.0);
    sum += v;
  }
  for (double& v : p) v /= sum;
  // Let the rounding of the normalization land where it may; the class sums
  // are within 1e-15 of one, well inside the constructor tolerance.
  return Distribution(p);
}

namespace {

JointDistribution random_joint_exact(Rng& rng, size_t nx, size_t ny, bool allow_zeros) {
  std::vector<double> t(nx * ny);
  double sum = 0.0;
  for (double& v : t) {
    v = (allow_zeros && rng.uniform() < 0.15) ? 0.0 : rng.uniform(0.0, 1.0);
    sum += v;
  }
  if (sum <= 0.0) {
    t[0] = 1.0;
    sum = 1.0;
  }
  for (double& v : t) v /= sum;
  return JointDistribution(nx, ny, t);
}

}  // namespace

JointDistribution random_joint(Rng& rng, size_t max_x, size_t max_y, bool allow_zeros) {
  const size_t nx = 1 + rng.index(max_x);  // sequenced: argument order is not
  const size_t ny = 1 + rng.index(max_y);  // specified and the stream must be
  return random_joint_exact(rng, nx, ny, allow_zeros);
}

// ---------------------------------------------------------------------------
// numerics suite
// ---------------------------------------------------------------------------

namespace {

void suite_numerics(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed);

  // log-sum-exp invariance under permutation.
  for (int trial = 0; trial < opt.trials; ++trial) {
    const size_t k = 1 + rng.index(40);
    std::vector<LogWeight> terms(k);
    for (LogWeight& t : terms) t = LogWeight::from_log2(rng.uniform(-80.0, 10.0));
    const double base = log_sum_exp(terms).log2();
    for (int shuffle = 0; shuffle < 4; ++shuffle) {
      for (size_t i = k; i > 1; --i) std::swap(terms[i - 1], terms[rng.index(i)]);
      const double again = log_sum_exp(terms).log2();
      const double rel = std::abs(again - base) / std::max(1.0, std::abs(base));
      rep.track(rel);
      rep.check(rel <= 1e-12, "log_sum_exp permutation drift " + fmt(rel));
    }
    ++rep.instances;
  }

  // Quantile composed with the CDF is the identity.
  for (int i = 0; i <= 200; ++i) {
    const double p = 1e-6 + (1.0 - 2e-6) * i / 200.0;
    const double err = std::abs(normal_cdf(normal_quantile(p)) - p);
    rep.track(err);
    rep.check(err <= 1e-9, "quantile/CDF identity error " + fmt(err) + " at p=" + fmt(p));
    const double anti = std::abs(normal_quantile(p) + normal_quantile(1.0 - p));
    rep.check(anti <= 1e-10, "quantile antisymmetry error " + fmt(anti));
  }

  // Rayleigh quotients never exceed the Jacobi maximum eigenvalue.
  for (int trial = 0; trial < std::min(opt.trials, 50); ++trial) {
    const int d = 2 + static_cast<int>(rng.index(5));
    SmallMatrix m = SmallMatrix::zeros(d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) m.at(i, j) = m.at(j, i) = rng.uniform(-1.0, 1.0);
    const double top = max_eigenvalue_symmetric(m);
    for (int probe = 0; probe < 100; ++probe) {
      std::vector<double> v(d);
      double norm2 = 0.0;
      for (double& vi : v) {
        vi = rng.uniform(-1.0, 1.0);
        norm2 += vi * vi;
      }
      if (norm2 == 0.0) continue;
      double quad = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) quad += v[i] * m.at(i, j) * v[j];
      rep.check(quad / norm2 <= top + 1e-10, "Rayleigh quotient above max eigenvalue");
    }
    ++rep.instances;
  }

  // Weak duality on random feasible LPs: min c.x, Ax >= b, x >= 0 against
  // its explicit dual max b.y, A^T y <= c, y >= 0.
  for (int trial = 0; trial < std::min(opt.trials, 60); ++trial) {
    const size_t n = 2 + rng.index(5), m = 2 + rng.index(5);
    std::vector<double> a(m * n), c(n), xhat(n), b(m);
    for (double& v : a) v = rng.uniform(0.0, 2.0);
    for (double& v : c) v = rng.uniform(0.1, 1.0);
    for (double& v : xhat) v = rng.uniform(0.0, 1.0);
    for (size_t i = 0; i < m; ++i) {
      double dot = 0.0;
      for (size_t j = 0; j < n; ++j) dot += a[i * n + j] * xhat[j];
      b[i] = dot - rng.uniform(0.0, 0.5);
    }

    LpProblem primal;
    primal.objective = c;
    primal.nonneg.assign(n, true);
    for (size_t i = 0; i < m; ++i) {
      LpRow row{std::vector<double>(a.begin() + i * n, a.begin() + (i + 1) * n),
                Relation::GreaterEq, b[i]};
      primal.rows.push_back(std::move(row));
    }
    LpProblem dual;
    dual.objective.resize(m);
    for (size_t i = 0; i < m; ++i) dual.objective[i] = -b[i];  // max b.y
    dual.nonneg.assign(m, true);
    for (size_t j = 0; j < n; ++j) {
      LpRow row{std::vector<double>(m), Relation::LessEq, c[j]};
      for (size_t i = 0; i < m; ++i) row.coeffs[i] = a[i * n + j];
      dual.rows.push_back(std::move(row));
    }
    const LpSolution ps = solve_lp(primal);
    const LpSolution ds = solve_lp(dual);
    rep.check(ps.status == LpStatus::Optimal && ds.status == LpStatus::Optimal,
              "random LP pair did not both solve");
    if (ps.status == LpStatus::Optimal && ds.status == LpStatus::Optimal) {
      const double gap = std::abs(ps.value + ds.value) / std::max(1.0, std::abs(ps.value));
      rep.track(gap);
      rep.check(gap <= 1e-9, "LP duality gap " + fmt(gap));
    }
    ++rep.instances;
  }
}

// ---------------------------------------------------------------------------
// dist suite
// ---------------------------------------------------------------------------

struct RawClass {
  double lp, lm;
};

// Reference i.i.d. expansion by repeated convolution, merging classes whose
// log-probabilities agree to 1e-9.
std::vector<RawClass> convolve_route(const Distribution& p, long n) {
  std::vector<RawClass> acc;
  for (double q : p.probs()) acc.push_back({std::log2(q), 0.0});
  auto canon = [](std::vector<RawClass> v) {
    std::sort(v.begin(), v.end(), [](const RawClass& a, const RawClass& b) { return a.lp > b.lp; });
    std::vector<RawClass> out;
    for (const RawClass& c : v) {
      if (!out.empty() && std::abs(out.back().lp - c.lp) <= 1e-9) {
        const double hi = std::max(out.back().lm, c.lm);
        out.back().lm = hi + std::log1p(std::exp2(std::min(out.back().lm, c.lm) - hi)) / 0.6931471805599453;
      } else {
        out.push_back(c);
      }
    }
    return out;
  };
  acc = canon(acc);
  std::vector<RawClass> base = acc;
  for (long step = 1; step < n; ++step) {
    std::vector<RawClass> next;
    next.reserve(acc.size() * base.size());
    for (const RawClass& a : acc)
      for (const RawClass& b : base) next.push_back({a.lp + b.lp, a.lm + b.lm});
    acc = canon(std::move(next));
  }
  return acc;
}

void suite_dist(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 1);

  // Mass invariant for random (p, n).
  for (int trial = 0; trial < opt.trials; ++trial) {
    const size_t d = 1 + rng.index(4);
    const long n = 1 + static_cast<long>(rng.index(100));
    const Distribution p = random_distribution(rng, d);
    const double mass_err = std::abs(std::exp2(iid_product(p, n).total_log2_mass()) - 1.0);
    rep.track(mass_err);
    rep.check(mass_err <= 1e-10, "iid mass drift " + fmt(mass_err));
    ++rep.instances;
  }

  // Additivity of entropy over products, via the flat expansion for tiny n.
  for (int trial = 0; trial < 20; ++trial) {
    const Distribution p = random_distribution(rng, 3);
    const long n = 2 + static_cast<long>(rng.index(4));
    std::vector<double> flat;
    std::function<void(long, double)> build = [&](long depth, double prob) {
      if (depth == n) {
        flat.push_back(prob);
        return;
      }
      for (double q : p.probs()) build(depth + 1, prob * q);
    };
    build(0, 1.0);
    double sum = 0.0;
    for (double v : flat) sum += v;
    for (double& v : flat) v /= sum;
    const double err = std::abs(entropy(Distribution(flat)) - n * entropy(p));
    rep.track(err);
    rep.check(err <= 1e-10, "entropy additivity error " + fmt(err));
    ++rep.instances;
  }

  // Two construction routes agree classwise.
  for (int trial = 0; trial < 20; ++trial) {
    const size_t d = 2 + rng.index(2);
    const long n = 2 + static_cast<long>(rng.index(19));
    const Distribution p = random_distribution(rng, d);
    const ClassEnsemble direct = iid_product(p, n);
    const std::vector<RawClass> rec = convolve_route(p, n);
    rep.check(direct.classes().size() == rec.size(),
              "route class counts differ: " + std::to_string(direct.classes().size()) + " vs " +
                  std::to_string(rec.size()));
    if (direct.classes().size() == rec.size()) {
      for (size_t k = 0; k < rec.size(); ++k) {
        const double dp = std::abs(direct.classes()[k].log2_prob - rec[k].lp);
        const double dm = std::abs(direct.classes()[k].log2_mult - rec[k].lm);
        rep.track(std::max(dp, dm));
        rep.check(dp <= 1e-11 && dm <= 1e-11, "route class mismatch " + fmt(std::max(dp, dm)));
      }
    }
    ++rep.instances;
  }
}

// ---------------------------------------------------------------------------
// spectrum suite
// ---------------------------------------------------------------------------

void suite_spectrum(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 2);

  // e_gamma nonincreasing.
  for (int trial = 0; trial < 1000; ++trial) {
    const Distribution p = random_distribution(rng, 6);
    const SortedSpectrum s = SortedSpectrum::from(p);
    double g1 = rng.uniform(-20.0, 1.0), g2 = rng.uniform(-20.0, 1.0);
    if (g1 > g2) std::swap(g1, g2);
    const double e1 = s.e_gamma(g1), e2 = s.e_gamma(g2);
    rep.check(e2 <= e1 + 1e-12, "e_gamma increased with gamma");
    ++rep.instances;
  }

  // beta monotone in alpha; crossing consistency for d_lower/d_upper.
  for (int trial = 0; trial < opt.trials; ++trial) {
    const Distribution p = random_distribution(rng, 6);
    const SortedSpectrum s = SortedSpectrum::from(p);
    double a1 = rng.uniform(0.01, 0.99), a2 = rng.uniform(0.01, 0.99);
    if (a1 > a2) std::swap(a1, a2);
    rep.check(s.beta(a1).log2() <= s.beta(a2).log2() + 1e-12, "beta not monotone in alpha");

    const double eps = rng.uniform(0.02, 0.98);
    const double lo_err = std::abs(s.e_gamma(s.d_lower(eps)) - (1.0 - eps));
    const double up_err = std::abs(s.e_gamma(s.d_upper(eps)) - eps);
    rep.track(std::max(lo_err, up_err));
    rep.check(lo_err <= 1e-9, "d_lower crossing residual " + fmt(lo_err));
    rep.check(up_err <= 1e-9, "d_upper crossing residual " + fmt(up_err));
    ++rep.instances;
  }

  // Second-order behavior of the testing quantity on the qubit ensemble:
  // residual sqrt(n) (log2(beta)/n - h) tracks sqrt(v) * quantile(alpha) up
  // to a log(n)/sqrt(n) third-order term; 0.3 covers it at n = 1000.
  {
    const Distribution p({0.9, 0.1});
    const double h = entropy(p), v = variance(p);
    const SortedSpectrum s = SortedSpectrum::from(iid_product(p, 1000));
    for (double alpha : {0.2, 0.5, 0.8}) {
      const double log2_beta = s.beta(alpha).log2();
      const double residual = std::sqrt(1000.0) * (log2_beta / 1000.0 - h);
      const double predicted = std::sqrt(v) * normal_quantile(alpha);
      rep.track(std::abs(residual - predicted));
      rep.check(std::abs(residual - predicted) <= 0.3,
                "beta second-order residual " + fmt(residual - predicted) + " at alpha=" + fmt(alpha));
      ++rep.instances;
    }
  }
}

// ---------------------------------------------------------------------------
// qp suites: oracle agreement, certificates, sandwich, solver properties
// ---------------------------------------------------------------------------

void suite_oracle(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 3);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const Distribution p = random_distribution(rng, 4);
    for (double eps : kEpsSet) {
      const double f_solver = std::exp2(solve_qp(p, eps).log2_f.log2());
      const QpOracleResult oracle = qp_oracle(p, eps);
      rep.check(oracle.converged, "projected-gradient oracle did not converge");
      const double diff = std::abs(f_solver - oracle.value);
      rep.track(diff);
      rep.check(diff <= 1e-5, "solver/oracle value gap " + fmt(diff));
    }
    ++rep.instances;
  }

  // Frozen two-outcome instance against the brute-force grid.
  const Distribution p2({0.9, 0.1});
  const double f_grid = qp_grid_oracle_2d(p2, 0.1, 1e-4);
  const double f_solver = std::exp2(solve_qp(p2, 0.1).log2_f.log2());
  rep.notes.push_back("grid oracle f = " + fmt(f_grid) + ", solver f = " + fmt(f_solver));
  rep.check(std::abs(f_grid - f_solver) <= 2e-3, "grid oracle disagrees with solver");
  ++rep.instances;
}

void suite_certificates(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 4);
  double worst_gap = 0.0, worst_eig = -1.0, worst_res = 0.0;
  for (int trial = 0; trial < opt.trials; ++trial) {
    const Distribution p = random_distribution(rng, 8);
    for (double eps : kEpsSet) {
      const QpSolution sol = solve_qp(p, eps);
      const Certificate cert = build_certificate(p, eps, sol);
      worst_gap = std::max(worst_gap, cert.gap_rel);
      worst_eig = std::max(worst_eig, cert.max_dual_eig);
      worst_res = std::max(worst_res, cert.primal_residual);
      rep.check(cert.feasible, "certificate failed: " + cert.failure + " (d=" +
                                   std::to_string(p.size()) + ", eps=" + fmt(eps) + ")");
    }
    ++rep.instances;
  }
  rep.track(worst_gap);
  rep.notes.push_back("worst relative gap " + fmt(worst_gap));
  rep.notes.push_back("worst dual eigenvalue " + fmt(worst_eig));
  rep.notes.push_back("worst primal residual " + fmt(worst_res));
}

void sandwich_check(SuiteReport& rep, const SortedSpectrum& s, double eps) {
  const double target = std::sqrt(1.0 - eps * eps);
  const QpSolution sol = solve_qp(s, eps);
  const double log2_f = sol.log2_f.log2();
  const double upper = s.beta(target).log2();
  rep.check(log2_f <= upper + 1e-9, "upper sandwich violated by " + fmt(log2_f - upper));
  rep.track(std::max(0.0, log2_f - upper));

  const double eta = eta_diagnostic(s, sol);
  const double alpha_low = target - eta;
  if (alpha_low > 1e-12) {
    const double lower = s.beta(alpha_low).log2();
    rep.check(log2_f >= lower - 1e-9, "lower sandwich violated by " + fmt(lower - log2_f));
    rep.track(std::max(0.0, lower - log2_f));
  }
  ++rep.instances;
}

void suite_sandwich(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 5);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const Distribution p = random_distribution(rng, 8);
    sandwich_check(rep, SortedSpectrum::from(p), kEpsSet[rng.index(kEpsSet.size())]);
  }
  for (long n : {1L, 10L, 100L, 1000L}) {
    const Distribution p({0.9, 0.1});
    sandwich_check(rep, SortedSpectrum::from(iid_product(p, n)), 0.1);
  }
  for (int trial = 0; trial < 10; ++trial) {
    const double delta = rng.uniform(0.55, 0.95);
    const Distribution p({delta, 1.0 - delta});
    sandwich_check(rep, SortedSpectrum::from(iid_product(p, 1000)), kEpsSet[rng.index(kEpsSet.size())]);
  }
}

void suite_qp(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 6);

  // Monotone in eps; multiplier reproduces the overlap target.
  for (int trial = 0; trial < opt.trials; ++trial) {
    const Distribution p = random_distribution(rng, 8);
    double prev = std::numeric_limits<double>::infinity();
    for (double eps : kEpsSet) {
      const QpSolution sol = solve_qp(p, eps);
      const double f = sol.log2_f.log2();
      rep.check(f <= prev + 1e-12, "f increased with eps");
      rep.check(f <= sol.log2_support + 1e-12, "f exceeds the support size");
      prev = f;
      const double target = std::sqrt(1.0 - eps * eps);
      const std::vector<double> g = smoothing_vector(p, sol);
      double overlap = 0.0;
      for (size_t x = 0; x < p.size(); ++x) overlap += g[x] * p[x];
      rep.track(std::abs(overlap - target));
      rep.check(std::abs(overlap - target) <= 1e-9,
                "overlap residual " + fmt(std::abs(overlap - target)));
    }
    ++rep.instances;
  }

  // Ensemble route equals the flat route for small binary products.
  for (long n : {2L, 5L, 8L, 12L}) {
    const Distribution p({0.9, 0.1});
    std::vector<double> flat;
    for (long k = 0; k <= n; ++k) {
      double binom = 1.0;
      for (long i = 0; i < k; ++i) binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
      const double prob = std::pow(0.9, static_cast<double>(n - k)) * std::pow(0.1, static_cast<double>(k));
      for (long c = 0; c < static_cast<long>(binom + 0.5); ++c) flat.push_back(prob);
    }
    double sum = 0.0;
    for (double v : flat) sum += v;
    for (double& v : flat) v /= sum;
    const double f_ens = solve_qp(iid_product(p, n), 0.1).log2_f.log2();
    const double f_flat = solve_qp(Distribution(flat), 0.1).log2_f.log2();
    rep.track(std::abs(f_ens - f_flat));
    rep.check(std::abs(f_ens - f_flat) <= 1e-9, "ensemble/flat mismatch " + fmt(f_ens - f_flat));
    ++rep.instances;
  }

  // Point mass: eta equals the overlap target itself.
  {
    const Distribution p({1.0});
    const SortedSpectrum s = SortedSpectrum::from(p);
    const QpSolution sol = solve_qp(s, 0.1);
    const double eta = eta_diagnostic(s, sol);
    rep.check(std::abs(eta - std::sqrt(1.0 - 0.01)) <= 1e-12, "point-mass eta " + fmt(eta));
    ++rep.instances;
  }

  // sqrt(n) eta stays bounded along the qubit sequence. The threshold class
  // walks the type lattice as n grows, so the sequence oscillates below its
  // bound rather than settling into a narrow band.
  {
    const Distribution p({0.9, 0.1});
    std::vector<double> scaled;
    for (long n : {100L, 200L, 400L, 800L, 1600L}) {
      const SortedSpectrum s = SortedSpectrum::from(iid_product(p, n));
      const QpSolution sol = solve_qp(s, 0.1);
      scaled.push_back(std::sqrt(static_cast<double>(n)) * eta_diagnostic(s, sol));
      ++rep.instances;
    }
    const double hi = *std::max_element(scaled.begin(), scaled.end());
    const double lo = *std::min_element(scaled.begin(), scaled.end());
    rep.notes.push_back("sqrt(n) eta band [" + fmt(lo) + ", " + fmt(hi) + "]");
    rep.check(hi <= 0.15, "sqrt(n) eta exceeds its bound: " + fmt(hi));
  }
}

// ---------------------------------------------------------------------------
// classical smoothing suites
// ---------------------------------------------------------------------------

void suite_trace(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 7);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const JointDistribution p = random_joint(rng, 4, 4, true);
    for (double eps : {0.05, 0.1, 0.3}) {
      const TraceSmoothResult relaxed = hmin_trace_relaxed(p, eps);
      const double partial = hmin_trace_lp(p, eps, SmoothMode::Partial);
      const double global = hmin_trace_lp(p, eps, SmoothMode::Global);
      const double dev = std::abs(partial - relaxed.lambda);
      rep.track(dev);
      rep.check(dev <= 1e-7, "partial LP vs relaxed gap " + fmt(dev));
      rep.check(partial >= global - 1e-9 && global >= relaxed.lambda - 1e-9,
                "relaxation chain out of order");
      rep.check(std::abs(global - relaxed.lambda) <= 1e-7, "global vs relaxed gap");
      rep.check(relaxed.witness.max_residual <= 1e-8, "relaxed witness infeasible");
    }
    ++rep.instances;
  }
}

void suite_counterexample(SuiteReport& rep, const Options& opt) {
  (void)opt;
  const JointDistribution p = counterexample_joint();
  const double eps = 0.1;
  const double partial = hmin_purified_classical(p, eps, SmoothMode::Partial);
  const double global = hmin_purified_classical(p, eps, SmoothMode::Global);
  rep.notes.push_back("partial lambda = " + fmt(partial) + " (-log2 = " + fmt(-std::log2(partial)) + ")");
  rep.notes.push_back("global lambda = " + fmt(global) + " (-log2 = " + fmt(-std::log2(global)) + ")");
  rep.notes.push_back("gap = " + fmt(partial - global));
  rep.check(partial >= global - 1e-12, "partial below global");
  rep.check(partial - global > 1e-3, "purified-distance gap below 1e-3");

  const double partial_oracle = purified_grid_oracle_lambda(p, eps, SmoothMode::Partial, 1e-3);
  const double global_oracle = purified_grid_oracle_lambda(p, eps, SmoothMode::Global, 1e-3);
  rep.track(std::max(std::abs(partial - partial_oracle), std::abs(global - global_oracle)));
  rep.check(std::abs(partial - partial_oracle) <= 5e-3, "partial disagrees with grid oracle");
  rep.check(std::abs(global - global_oracle) <= 5e-3, "global disagrees with grid oracle");
  rep.check(partial_oracle - global_oracle > 1e-3, "oracle gap below 1e-3");
  rep.instances += 2;
}

void suite_prop1(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 8);
  const int rounds = std::max(1, opt.trials / 2);
  for (int trial = 0; trial < rounds; ++trial) {
    const double eps = rng.uniform(0.05, 0.6);
    // Product joint: R carries no information about X.
    {
      const Distribution u = random_distribution(rng, 5);
      const Distribution q = random_distribution(rng, 5);
      std::vector<double> t(u.size() * q.size());
      for (size_t x = 0; x < u.size(); ++x)
        for (size_t y = 0; y < q.size(); ++y) t[x * q.size() + y] = u[x] * q[y];
      const JointDistribution p(u.size(), q.size(), t);
      const double partial = hmin_purified_classical(p, eps, SmoothMode::Partial);
      const double global = hmin_purified_classical(p, eps, SmoothMode::Global);
      rep.track(std::abs(partial - global));
      rep.check(std::abs(partial - global) <= 1e-7,
                "product joint: partial/global differ by " + fmt(partial - global));
    }
    // Perfectly correlated joint.
    {
      const Distribution u = random_distribution(rng, 5);
      const size_t d = u.size();
      std::vector<double> t(d * d, 0.0);
      for (size_t x = 0; x < d; ++x) t[x * d + x] = u[x];
      const JointDistribution p(d, d, t);
      const double partial = hmin_purified_classical(p, eps, SmoothMode::Partial);
      const double global = hmin_purified_classical(p, eps, SmoothMode::Global);
      rep.track(std::abs(partial - global));
      rep.check(std::abs(partial - global) <= 1e-7,
                "correlated joint: partial/global differ by " + fmt(partial - global));
    }
    ++rep.instances;
  }
}

void suite_imax(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 9);
  for (int trial = 0; trial < opt.trials; ++trial) {
    const JointDistribution p = random_joint(rng, 4, 4, true);
    const double eps = (trial % 2 == 0) ? 0.05 : 0.2;
    const ImaxResult global = imax_global_lp(p, eps);
    const ImaxPartialWitness wit = imax_partial_from_global(p, eps, global);
    rep.track(wit.max_residual);
    rep.check(wit.max_residual <= 1e-8, "construction residual " + fmt(wit.max_residual));
    rep.check(std::abs(wit.value - global.value) <= 1e-12, "construction changed the objective");
    const ImaxResult partial = imax_partial_lp(p, eps);
    const double dev = std::abs(partial.value - global.value);
    rep.track(dev);
    rep.check(dev <= 1e-7, "independent partial LP deviates by " + fmt(dev));
    ++rep.instances;
  }

  // Boundary behavior: near-total smoothing leaves Tr R near its floor of 1.
  const JointDistribution tiny = random_joint(rng, 2, 2, false);
  const ImaxResult high = imax_global_lp(tiny, 0.99);
  rep.check(high.value >= 1.0 - 1e-9 && high.value <= 1.0 + 1e-6,
            "Tr R at eps=0.99 is " + fmt(high.value));
  ++rep.instances;
}

void suite_waterfill(SuiteReport& rep, const Options& opt) {
  Rng rng(opt.seed + 10);
  const int rounds = std::min(opt.trials, 40);
  for (int trial = 0; trial < rounds; ++trial) {
    const JointDistribution p = random_joint_exact(rng, 2, 2, false);
    const double lambda = rng.uniform(0.05, 1.0);
    for (SmoothMode mode : {SmoothMode::Partial, SmoothMode::Global}) {
      const double exact = purified_best_overlap(p, lambda, mode);
      const double grid = purified_grid_oracle_overlap(p, lambda, mode, 1e-3);
      rep.check(exact >= grid - 1e-9, "water-filling below the lattice maximum");
      rep.track(std::abs(exact - grid));
      rep.check(std::abs(exact - grid) <= 5e-3, "water-filling vs grid gap " + fmt(exact - grid));
    }
    ++rep.instances;
  }
}

// ---------------------------------------------------------------------------
// asymptotics suites
// ---------------------------------------------------------------------------

void suite_figure1(SuiteReport& rep, const Options& opt) {
  (void)opt;
  CurveOptions copt;  // paper defaults: delta 0.9, eps 0.1, n = 50..1000 step 50
  const CompressionCurves curves = compression_curves(copt);
  rep.check(curves.rows.size() == 20, "expected 20 grid rows");

  for (const CurveRow& r : curves.rows) {
    rep.check(r.qp_converse <= r.direct_achiev + 1e-12,
              "row n=" + std::to_string(r.n) + ": converse above direct achievability");
    rep.check(r.direct_achiev <= r.is_achiev + 1e-12,
              "row n=" + std::to_string(r.n) + ": direct above info-spectrum achievability");
    rep.check(r.qp_converse > r.dl_converse,
              "row n=" + std::to_string(r.n) + ": new converse not above info-spectrum converse");
    ++rep.instances;
  }

  auto row_at = [&](long n) {
    for (const CurveRow& r : curves.rows)
      if (r.n == n) return r;
    throw std::logic_error("missing row");
  };
  const CurveRow r250 = row_at(250), r1000 = row_at(1000);
  rep.check(std::abs(r1000.qp_converse - r1000.second_order) <
                std::abs(r250.qp_converse - r250.second_order),
            "qp converse not converging toward the second-order value");
  rep.check(std::abs(r1000.is_achiev - r1000.second_order) <
                std::abs(r250.is_achiev - r250.second_order),
            "info-spectrum achievability not converging toward the second-order value");
  rep.notes.push_back("gap to second order at n=1000: qp " +
                      fmt(std::abs(r1000.qp_converse - r1000.second_order)) + ", is " +
                      fmt(std::abs(r1000.is_achiev - r1000.second_order)));
}

void suite_asympt(SuiteReport& rep, const Options& opt) {
  (void)opt;
  const Distribution p({0.9, 0.1});
  const double h = entropy(p), v = variance(p);

  // Scaled second-order remainder n |qp - so| / log2 n stays in a factor-3 band.
  CurveOptions copt;
  copt.n_grid = {250, 500, 1000};
  const CompressionCurves curves = compression_curves(copt);
  std::vector<double> scaled;
  for (const CurveRow& r : curves.rows) {
    const double nn = static_cast<double>(r.n);
    scaled.push_back(nn * std::abs(r.qp_converse - r.second_order) / std::log2(nn));
    ++rep.instances;
  }
  const double hi = *std::max_element(scaled.begin(), scaled.end());
  const double lo = *std::min_element(scaled.begin(), scaled.end());
  rep.notes.push_back("remainder band [" + fmt(lo) + ", " + fmt(hi) + "]");
  rep.check(hi <= 3.0 * lo, "second-order remainder band exceeds factor 3");

  // Third-order floor: subtracting the -(1/2) log2 n term leaves a remainder
  // that never drops materially below its value at the smallest n.
  std::vector<double> excess;
  for (long n = 100; n <= 1000; n += 100) {
    const double log2_f = solve_qp(iid_product(p, n), 0.1).log2_f.log2();
    const double third = expand({h, v, 0.1, n, Expansion::PartialPureThird});
    excess.push_back(log2_f - third);
    ++rep.instances;
  }
  for (size_t i = 0; i < excess.size(); ++i)
    rep.check(excess[i] >= excess.front() - 0.5,
              "third-order remainder dove at n=" + std::to_string(100 * (i + 1)));
  rep.notes.push_back("third-order excess range [" +
                      fmt(*std::min_element(excess.begin(), excess.end())) + ", " +
                      fmt(*std::max_element(excess.begin(), excess.end())) + "]");

  // Compression expansion decreases in eps when v > 0.
  double prev = std::numeric_limits<double>::infinity();
  for (double eps : {0.05, 0.1, 0.3, 0.6, 0.9}) {
    const double val = expand({h, v, eps, 500, Expansion::Compression});
    rep.check(val < prev, "compression expansion not decreasing in eps");
    prev = val;
  }
  ++rep.instances;
}

using SuiteFn = void (*)(SuiteReport&, const Options&);

const std::vector<std::pair<std::string, SuiteFn>>& suite_table() {
  static const std::vector<std::pair<std::string, SuiteFn>> table = {
      {"numerics", suite_numerics},
      {"dist", suite_dist},
      {"spectrum", suite_spectrum},
      {"oracle", suite_oracle},
      {"certificates", suite_certificates},
      {"sandwich", suite_sandwich},
      {"qp", suite_qp},
      {"trace", suite_trace},
      {"counterexample", suite_counterexample},
      {"prop1", suite_prop1},
      {"imax", suite_imax},
      {"waterfill", suite_waterfill},
      {"figure1", suite_figure1},
      {"asympt", suite_asympt},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, fn] : suite_table()) out.push_back(name);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const Options& opt) {
  for (const auto& [suite, fn] : suite_table()) {
    if (suite == name) {
      SuiteReport rep;
      rep.name = name;
      const auto start = std::chrono::steady_clock::now();
      fn(rep, opt);
      rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      return rep;
    }
  }
  throw std::invalid_argument("unknown suite '" + name + "'");
}

std::vector<SuiteReport> run_all(const Options& opt) {
  std::vector<SuiteReport> reports;
  for (const auto& [name, fn] : suite_table()) reports.push_back(run_suite(name, opt));
  return reports;
}

// ---------------------------------------------------------------------------
// grid oracles
// ---------------------------------------------------------------------------

double qp_grid_oracle_2d(const Distribution& p, double eps, double resolution) {
  if (p.size() != 2) throw std::domain_error("qp_grid_oracle_2d: needs two outcomes");
  const double target = std::sqrt(1.0 - eps * eps);
  const long steps = static_cast<long>(std::llround(1.0 / resolution));
  double best = std::numeric_limits<double>::infinity();
  for (long i = 0; i <= steps; ++i) {
    const double g0 = static_cast<double>(i) * resolution;
    const double need = target - g0 * p[0];
    // smallest lattice g1 meeting the overlap; everything above is worse
    long j0 = need <= 0.0 ? 0 : static_cast<long>(std::ceil(need / p[1] / resolution - 1e-12));
    if (j0 > steps) continue;
    const double g1 = static_cast<double>(j0) * resolution;
    best = std::min(best, g0 * g0 + g1 * g1);
  }
  return best;
}

namespace {

// Best lattice fidelity per budget bucket for one column of a 2x2 joint.
std::vector<double> column_curve(double w0, double w1, double cap, long budget_units,
                                 double resolution) {
  const long n0 = std::min(budget_units, static_cast<long>(cap / resolution));
  std::vector<double> best(budget_units + 1, 0.0);
  for (long i = 0; i <= n0; ++i) {
    const double f0 = std::sqrt(w0 * static_cast<double>(i) * resolution);
    for (long j = 0; i + j <= budget_units && j <= n0; ++j) {
      const double f = f0 + std::sqrt(w1 * static_cast<double>(j) * resolution);
      double& slot = best[i + j];
      if (f > slot) slot = f;
    }
  }
  for (long b = 1; b <= budget_units; ++b) best[b] = std::max(best[b], best[b - 1]);
  return best;
}

}  // namespace

double purified_grid_oracle_overlap(const JointDistribution& p, double lambda, SmoothMode mode,
                                    double resolution) {
  if (p.nx() != 2 || p.ny() != 2) throw std::domain_error("purified grid oracle: needs 2x2 joints");
  if (mode == SmoothMode::Partial) {
    double f = 0.0;
    for (size_t y = 0; y < 2; ++y) {
      const long units = static_cast<long>(p.py(y) / resolution);
      const std::vector<double> curve =
          column_curve(p.p(0, y), p.p(1, y), lambda * p.py(y), units, resolution);
      f += curve.back();
    }
    return f;
  }
  const long units = static_cast<long>(1.0 / resolution);
  const std::vector<double> c0 = column_curve(p.p(0, 0), p.p(1, 0), lambda * p.py(0), units, resolution);
  const std::vector<double> c1 = column_curve(p.p(0, 1), p.p(1, 1), lambda * p.py(1), units, resolution);
  double best = 0.0;
  for (long b = 0; b <= units; ++b) best = std::max(best, c0[b] + c1[units - b]);
  return best;
}

double purified_grid_oracle_lambda(const JointDistribution& p, double eps, SmoothMode mode,
                                   double resolution) {
  const double target = std::sqrt(1.0 - eps * eps);
  double lo = 0.0, hi = 0.0;
  for (size_t x = 0; x < p.nx(); ++x)
    for (size_t y = 0; y < p.ny(); ++y)
      if (p.py(y) > 0.0) hi = std::max(hi, p.p(x, y) / p.py(y));
  hi *= 1.0 + 8.0 * resolution;  // lattice undershoot headroom
  for (int iter = 0; iter < 40; ++iter) {
    const double mid = 0.5 * (lo + hi);
    if (purified_grid_oracle_overlap(p, mid, mode, resolution) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

}  // namespace minent::verify
