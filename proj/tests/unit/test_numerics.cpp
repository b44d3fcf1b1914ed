#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "minent/log_weight.hpp"
#include "minent/numerics.hpp"
#include "minent/simplex.hpp"

using namespace minent;

TEST_CASE("log_sum_exp basics") {
  CHECK(log_sum_exp(std::vector<LogWeight>{}).is_zero());

  const LogWeight two = log_sum_exp(std::vector<LogWeight>{LogWeight::from_log2(0.0), LogWeight::from_log2(0.0)});
  CHECK(two.log2() == doctest::Approx(1.0).epsilon(1e-14));

  const std::vector<LogWeight> probs{LogWeight::from_linear(0.9), LogWeight::from_linear(0.1)};
  CHECK(log_sum_exp(probs).log2() == doctest::Approx(0.0).epsilon(1e-13));

  CHECK((LogWeight::zero() + LogWeight::from_linear(0.5)).linear() == doctest::Approx(0.5));
  CHECK((LogWeight::from_linear(0.25) * LogWeight::from_linear(0.5)).linear() ==
        doctest::Approx(0.125));
  CHECK(LogWeight::zero().is_zero());
  CHECK((LogWeight::zero() * LogWeight::one()).is_zero());
}

TEST_CASE("log domain sums stay finite at extreme counts") {
  // 2^62 + 2^62 outcomes-worth of weight stays representable in log form
  const LogWeight huge = LogWeight::from_log2(62.0) + LogWeight::from_log2(62.0);
  CHECK(huge.log2() == doctest::Approx(63.0).epsilon(1e-14));
  CHECK(std::isfinite(huge.log2()));
  // and far beyond any linear-domain double
  const LogWeight astronomic = LogWeight::from_log2(40000.0) + LogWeight::from_log2(39999.0);
  CHECK(std::isfinite(astronomic.log2()));
  CHECK(astronomic.log2() == doctest::Approx(40000.584962500721).epsilon(1e-14));
}

TEST_CASE("log_sum_exp permutation stability") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-100.0, 5.0);
  std::vector<LogWeight> terms(50);
  for (LogWeight& t : terms) t = LogWeight::from_log2(u(rng));
  const double base = log_sum_exp(terms).log2();
  for (int k = 0; k < 20; ++k) {
    std::shuffle(terms.begin(), terms.end(), rng);
    CHECK(std::abs(log_sum_exp(terms).log2() - base) <= 1e-12 * std::max(1.0, std::abs(base)));
  }
}

namespace {

// Independent inversion of the erfc-based CDF by plain bisection.
double quantile_by_bisection(double p) {
  long double lo = -40.0L, hi = 40.0L;
  for (int i = 0; i < 200; ++i) {
    const long double mid = 0.5L * (lo + hi);
    if (0.5L * erfcl(-mid / 1.41421356237309504880L) < p)
      lo = mid;
    else
      hi = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

}  // namespace

TEST_CASE("normal quantile") {
  CHECK(normal_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(normal_quantile(0.975) == doctest::Approx(1.959963985).epsilon(1e-8));
  CHECK(std::abs(normal_quantile(0.975) - quantile_by_bisection(0.975)) <= 1e-10);

  for (double p : {1e-6, 1e-3, 0.02, 0.2, 0.5, 0.7, 0.97, 1.0 - 1e-5}) {
    CHECK(std::abs(normal_quantile(p) - quantile_by_bisection(p)) <= 1e-10);
    CHECK(std::abs(normal_quantile(p) + normal_quantile(1.0 - p)) <= 1e-10);
  }

  CHECK_THROWS_AS(normal_quantile(0.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(1.0), std::domain_error);
  CHECK_THROWS_AS(normal_quantile(-0.5), std::domain_error);
}

TEST_CASE("bisect_monotone") {
  const double root = bisect_monotone([](double x) { return x; }, 0.3, 0.0, 1.0, 1e-14);
  CHECK(root == doctest::Approx(0.3).epsilon(1e-12));

  const double cube = bisect_monotone([](double x) { return std::exp2(x); }, 8.0, 0.0, 10.0, 1e-12);
  CHECK(cube == doctest::Approx(3.0).epsilon(1e-10));

  // decreasing direction
  const double dec = bisect_monotone([](double x) { return -x; }, -0.25, 0.0, 1.0, 1e-14);
  CHECK(dec == doctest::Approx(0.25).epsilon(1e-12));

  CHECK_THROWS_AS(bisect_monotone([](double x) { return x; }, 2.0, 0.0, 1.0, 1e-14), BracketError);

  // A probe outside the endpoint range exposes the nonmonotone function.
  auto bump = [](double x) { return x == 0.5 ? 5.0 : x; };
  CHECK_THROWS_AS(bisect_monotone(bump, 0.9, 0.0, 1.0, 1e-16), BracketError);
}

TEST_CASE("symmetric eigenvalues") {
  SmallMatrix eye = SmallMatrix::zeros(3);
  for (int i = 0; i < 3; ++i) eye.at(i, i) = 1.0;
  CHECK(max_eigenvalue_symmetric(eye) == doctest::Approx(1.0).epsilon(1e-13));

  SmallMatrix diag = SmallMatrix::zeros(2);
  diag.at(0, 0) = 2.0;
  diag.at(1, 1) = -1.0;
  CHECK(max_eigenvalue_symmetric(diag) == doctest::Approx(2.0).epsilon(1e-13));

  // rank one v v^T with |v|^2 = 5
  const std::vector<double> v{2.0, 1.0};
  SmallMatrix outer = SmallMatrix::zeros(2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) outer.at(i, j) = v[i] * v[j];
  CHECK(max_eigenvalue_symmetric(outer) == doctest::Approx(5.0).epsilon(1e-12));

  SmallMatrix bad = SmallMatrix::zeros(2);
  bad.at(0, 1) = 1.0;
  bad.at(1, 0) = 0.5;
  CHECK_THROWS_AS(max_eigenvalue_symmetric(bad), std::domain_error);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 5);
    SmallMatrix m = SmallMatrix::zeros(d);
    for (int i = 0; i < d; ++i)
      for (int j = i; j < d; ++j) m.at(i, j) = m.at(j, i) = u(rng);
    const double top = max_eigenvalue_symmetric(m);
    const std::vector<double> eig = eigenvalues_symmetric(m);
    double trace = 0.0, eig_sum = 0.0;
    for (int i = 0; i < d; ++i) trace += m.at(i, i);
    for (double e : eig) eig_sum += e;
    CHECK(eig_sum == doctest::Approx(trace).epsilon(1e-10));
    for (int probe = 0; probe < 50; ++probe) {
      std::vector<double> x(d);
      double n2 = 0.0;
      for (double& xi : x) {
        xi = u(rng);
        n2 += xi * xi;
      }
      double quad = 0.0;
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) quad += x[i] * m.at(i, j) * x[j];
      CHECK(quad / n2 <= top + 1e-10);
    }
  }
}

TEST_CASE("simplex solves small programs") {
  {
    // min x s.t. x >= 3
    LpProblem p;
    p.objective = {1.0};
    p.nonneg = {true};
    p.rows.push_back({{1.0}, Relation::GreaterEq, 3.0});
    const LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(3.0).epsilon(1e-12));
  }
  {
    // min x + y s.t. x + y >= 1
    LpProblem p;
    p.objective = {1.0, 1.0};
    p.nonneg = {true, true};
    p.rows.push_back({{1.0, 1.0}, Relation::GreaterEq, 1.0});
    const LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
  }
  {
    // infeasible: x >= 1 and x <= 0
    LpProblem p;
    p.objective = {0.0};
    p.nonneg = {true};
    p.rows.push_back({{1.0}, Relation::GreaterEq, 1.0});
    p.rows.push_back({{1.0}, Relation::LessEq, 0.0});
    CHECK(solve_lp(p).status == LpStatus::Infeasible);
  }
  {
    // unbounded: min -x s.t. x >= 0
    LpProblem p;
    p.objective = {-1.0};
    p.nonneg = {true};
    p.rows.push_back({{1.0}, Relation::GreaterEq, 0.0});
    CHECK(solve_lp(p).status == LpStatus::Unbounded);
  }
  {
    // free variable with equality rows: min |style| x free, x = -2
    LpProblem p;
    p.objective = {1.0};
    p.nonneg = {false};
    p.rows.push_back({{1.0}, Relation::Eq, -2.0});
    const LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(-2.0).epsilon(1e-12));
  }
  {
    // degenerate rows that force phase-1 artificials to be driven out
    LpProblem p;
    p.objective = {1.0, 2.0, 0.0};
    p.nonneg = {true, true, true};
    p.rows.push_back({{1.0, 1.0, 1.0}, Relation::Eq, 1.0});
    p.rows.push_back({{1.0, 1.0, 1.0}, Relation::Eq, 1.0});  // duplicate
    const LpSolution s = solve_lp(p);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(0.0).epsilon(1e-12));
  }

  LpProblem bad;
  bad.objective = {1.0};
  bad.nonneg = {true};
  bad.rows.push_back({{1.0, 2.0}, Relation::Eq, 0.0});
  CHECK_THROWS_AS(solve_lp(bad), std::invalid_argument);
}
