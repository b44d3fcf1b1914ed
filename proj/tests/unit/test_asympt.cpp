#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "minent/asympt.hpp"
#include "minent/numerics.hpp"

using namespace minent;

TEST_CASE("expansion variants") {
  // zero variance collapses every second-order form to n h
  for (Expansion variant : {Expansion::Beta, Expansion::SpectrumLower, Expansion::SpectrumUpper,
                            Expansion::PartialPure, Expansion::Compression}) {
    CHECK(expand({0.7, 0.0, 0.3, 200, variant}) == doctest::Approx(140.0).epsilon(1e-13));
  }

  // direct substitution: h=1, v=1, n=100, eps=0.6 so the argument is 0.8
  CHECK(expand({1.0, 1.0, 0.6, 100, Expansion::PartialPure}) ==
        doctest::Approx(100.0 + 10.0 * normal_quantile(0.8)).epsilon(1e-13));

  // compression argument is sqrt(1 - eps)
  const double h = 0.468995593589281;
  const double v = 0.904358206329214;
  CHECK(expand({h, v, 0.1, 1000, Expansion::Compression}) ==
        doctest::Approx(1000.0 * h + std::sqrt(1000.0 * v) * normal_quantile(std::sqrt(0.9)))
            .epsilon(1e-13));

  // third-order form subtracts half a log
  CHECK(expand({h, v, 0.1, 1000, Expansion::PartialPureThird}) ==
        doctest::Approx(expand({h, v, 0.1, 1000, Expansion::PartialPure}) -
                        0.5 * std::log2(1000.0))
            .epsilon(1e-13));

  // signs: the spectrum pair straddles n h symmetrically
  const double up = expand({h, v, 0.2, 400, Expansion::SpectrumLower});
  const double down = expand({h, v, 0.2, 400, Expansion::SpectrumUpper});
  CHECK(up + down == doctest::Approx(2.0 * 400.0 * h).epsilon(1e-11));

  CHECK_THROWS_AS(expand({1.0, -1.0, 0.1, 10, Expansion::Beta}), std::domain_error);
  CHECK_THROWS_AS(expand({1.0, 1.0, 0.0, 10, Expansion::Beta}), std::domain_error);
  CHECK_THROWS_AS(expand({1.0, 1.0, 0.1, 0, Expansion::Beta}), std::domain_error);
}

TEST_CASE("direct achievability") {
  // deterministic source compresses to nothing
  const SortedSpectrum point = SortedSpectrum::from(iid_product(Distribution({1.0}), 10));
  CHECK(direct_achievability(point, 0.1) == doctest::Approx(0.0));

  // flat spectrum keeps everything: log2 M = k on 2^k outcomes
  const SortedSpectrum flat = SortedSpectrum::from(Distribution(std::vector<double>(8, 0.125)));
  CHECK(direct_achievability(flat, 0.05) == doctest::Approx(3.0).epsilon(1e-12));

  CHECK_THROWS_AS(direct_achievability(flat, 0.0), std::domain_error);
}

TEST_CASE("info-spectrum converse over an eta grid") {
  const SortedSpectrum s = SortedSpectrum::from(iid_product(Distribution({0.9, 0.1}), 200));

  CHECK_THROWS_AS(dl_converse(s, 0.1, {}), std::domain_error);
  CHECK_THROWS_AS(dl_converse(s, 0.1, {0.95}), std::domain_error);
  CHECK_THROWS_AS(dl_converse(s, 0.1, {0.0}), std::domain_error);

  // the log2(eta) penalty sends tiny eta to very poor values
  const double tiny = dl_converse(s, 0.1, {1e-6}).value;
  const double moderate = dl_converse(s, 0.1, {0.05}).value;
  CHECK(tiny < moderate - 10.0);

  // optimizer picks the best grid point
  const DlConverse best = dl_converse(s, 0.1, {1e-4, 0.01, 0.05, 0.2, 0.5});
  for (double eta : {1e-4, 0.01, 0.05, 0.2, 0.5})
    CHECK(best.value >= dl_converse(s, 0.1, {eta}).value - 1e-12);
}

TEST_CASE("compression curves") {
  CurveOptions opt;
  opt.n_grid = {50, 250, 1000};
  const CompressionCurves curves = compression_curves(opt);
  REQUIRE(curves.rows.size() == 3);
  for (const CurveRow& r : curves.rows) {
    CHECK(r.qp_converse <= r.direct_achiev + 1e-12);
    CHECK(r.direct_achiev <= r.is_achiev + 1e-12);
    CHECK(r.qp_converse > r.dl_converse);
  }

  // uniform qubit: every column sits at 1 up to O(1/n) corrections
  CurveOptions flat;
  flat.delta = 0.5;
  flat.n_grid = {100, 400};
  for (const CurveRow& r : compression_curves(flat).rows) {
    const double slack = 5.0 / static_cast<double>(r.n);
    CHECK(r.second_order == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(std::abs(r.qp_converse - 1.0) <= slack);
    CHECK(std::abs(r.is_achiev - 1.0) <= slack);
    CHECK(std::abs(r.direct_achiev - 1.0) <= slack);
    CHECK(std::abs(r.dl_converse - 1.0) <= slack);
  }

  // fixed-eta override reproduces a single-point grid
  CurveOptions fixed;
  fixed.n_grid = {200};
  fixed.eta_override = 0.05;
  const CurveRow row = compression_curves(fixed).rows.front();
  CHECK(row.dl_eta == doctest::Approx(0.05));

  CHECK_THROWS_AS(compression_curves({0.9, 0.1, {0}, {}}), std::domain_error);
  CHECK_THROWS_AS(compression_curves({1.5, 0.1, {10}, {}}), std::domain_error);
}

TEST_CASE("curve serialization is stable") {
  CurveOptions opt;
  opt.n_grid = {50, 100};
  const CompressionCurves curves = compression_curves(opt);

  std::ostringstream csv1, csv2, dat_os;
  curves.write_csv(csv1);
  curves.write_csv(csv2);
  const std::string csv = csv1.str();
  CHECK(csv == csv2.str());
  CHECK(csv.rfind("n,qp_converse,dl_converse,is_achiev,direct_achiev,second_order\n", 0) == 0);
  // 1 header + 2 rows
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  curves.write_dat(dat_os);
  const std::string dat = dat_os.str();
  CHECK(std::count(dat.begin(), dat.end(), '\n') == 2);
  CHECK(dat.rfind("50 ", 0) == 0);  // column 0 is n
}
