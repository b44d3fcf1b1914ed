#include <doctest.h>

#include "minent/verify.hpp"

using namespace minent;

TEST_CASE("verify suites run clean at reduced trial counts") {
  const verify::Options opt{42, 25};
  for (const std::string& name :
       {"numerics", "dist", "spectrum", "oracle", "certificates", "sandwich", "qp", "trace",
        "prop1", "imax", "waterfill", "figure1", "asympt"}) {
    const verify::SuiteReport rep = verify::run_suite(name, opt);
    INFO(rep.name);
    for (const std::string& f : rep.failures) INFO(f);
    CHECK(rep.passed);
    CHECK(rep.instances > 0);
  }
}

TEST_CASE("counterexample suite is deterministic and passes") {
  const verify::SuiteReport a = verify::run_suite("counterexample", {42, 10});
  const verify::SuiteReport b = verify::run_suite("counterexample", {7, 10});
  CHECK(a.passed);
  CHECK(b.passed);
  CHECK(a.notes == b.notes);  // suite has no randomized part
}

TEST_CASE("seeded suites reproduce their reports") {
  const verify::SuiteReport a = verify::run_suite("certificates", {123, 30});
  const verify::SuiteReport b = verify::run_suite("certificates", {123, 30});
  CHECK(a.worst == b.worst);
  CHECK(a.instances == b.instances);
  const verify::SuiteReport c = verify::run_suite("certificates", {124, 30});
  CHECK(c.passed);
}

TEST_CASE("unknown suite is rejected") {
  CHECK_THROWS_AS(verify::run_suite("nope", {1, 1}), std::invalid_argument);
}

TEST_CASE("grid oracle matches the closed form on the frozen instance") {
  const Distribution p({0.9, 0.1});
  const double grid = verify::qp_grid_oracle_2d(p, 0.1, 1e-3);
  CHECK(grid == doctest::Approx(1.9022613).epsilon(2e-2));
}
