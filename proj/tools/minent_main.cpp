#include <CLI11.hpp>

#include <cstdio>
#include <utility>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "minent/asympt.hpp"
#include "minent/classical_smooth.hpp"
#include "minent/dist.hpp"
#include "minent/psme.hpp"
#include "minent/spectrum.hpp"
#include "minent/verify.hpp"

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string read_stream_or_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

int run_hmin(const minent::Distribution& base, long n, double eps, bool certify) {
  using namespace minent;
  const SortedSpectrum spec =
      n == 1 ? SortedSpectrum::from(base) : SortedSpectrum::from(iid_product(base, n));
  const QpSolution sol = solve_qp(spec, eps);
  std::cout << "-Hmin (log2 f)   = " << num(sol.log2_f.log2()) << "\n";
  std::cout << "Hmin             = " << num(-sol.log2_f.log2()) << "\n";
  if (std::isinf(sol.log2_half_a)) {
    std::cout << "log2(a*)         = inf (eps = 0)\n";
  } else {
    std::cout << "log2(a*)         = " << num(sol.log2_half_a + 1.0) << "\n";
    const double a_star = std::exp2(sol.log2_half_a + 1.0);
    if (std::isfinite(a_star)) std::cout << "a*               = " << num(a_star) << "\n";
  }
  std::cout << "achieved overlap = " << num(sol.achieved_overlap) << "\n";
  std::cout << "log2 support     = " << num(sol.log2_support) << "\n";
  if (certify) {
    const Certificate cert = build_certificate(base, eps, n == 1 ? sol : solve_qp(base, eps));
    std::cout << "certificate      = " << (cert.feasible ? "ok" : ("FAILED: " + cert.failure))
              << "\n";
    std::cout << "  primal value   = " << num(cert.primal_value) << "\n";
    std::cout << "  dual value     = " << num(cert.dual_value) << "\n";
    std::cout << "  relative gap   = " << num(cert.gap_rel) << "\n";
    std::cout << "  max dual eig   = " << num(cert.max_dual_eig) << "\n";
    std::cout << "  primal residual= " << num(cert.primal_residual) << "\n";
    if (!cert.feasible) return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minent: smoothed min-entropy toolkit (smoothing-program solver, duality "
               "certificates, one-shot entropies, compression bound curves)"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "read defaults from a TOML/INI config file (flags win)");

  int exit_code = 0;
  bool dispatched = false;  // a configurable subcommand named both on the
                            // command line and in the config fires twice

  // hmin -----------------------------------------------------------------
  auto* hmin = app.add_subcommand(
      "hmin", "Partially smoothed conditional min-entropy of a pure state from its "
              "Schmidt coefficients");
  hmin->configurable();
  std::string hmin_dist;
  double hmin_delta = 0.0;
  long hmin_n = 1;
  double hmin_eps = 0.0;
  bool hmin_certify = false;
  auto* hmin_dist_opt =
      hmin->add_option("--dist", hmin_dist, "comma-separated probability list, e.g. 0.9,0.1");
  auto* hmin_delta_opt = hmin->add_option(
      "--delta", hmin_delta, "qubit shorthand: expands to the distribution (delta, 1-delta)");
  hmin_dist_opt->excludes(hmin_delta_opt);
  hmin_delta_opt->excludes(hmin_dist_opt);
  hmin->add_option("--n", hmin_n, "i.i.d. copies, evaluated via type classes")
      ->default_val(1)
      ->check(CLI::PositiveNumber);
  hmin->add_option("--eps", hmin_eps, "smoothing parameter in [0, 1)")->required();
  hmin->add_flag("--certify", hmin_certify,
                 "build and print the primal/dual optimality certificate (n = 1)");
  hmin->callback([&] {
    if (std::exchange(dispatched, true)) return;
    if (hmin_dist_opt->count() == 0 && hmin_delta_opt->count() == 0)
      throw CLI::RequiredError("--dist or --delta");
    if (hmin_certify && hmin_n != 1)
      throw CLI::ValidationError("--certify", "certificates need an explicit distribution (use --n 1)");
    minent::Distribution base({1.0});
    try {
      base = hmin_dist_opt->count() ? minent::Distribution::parse(hmin_dist)
                                    : minent::Distribution({hmin_delta, 1.0 - hmin_delta});
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError(hmin_dist_opt->count() ? "--dist" : "--delta", e.what());
    }
    exit_code = run_hmin(base, hmin_n, hmin_eps, hmin_certify);
  });

  // figure1 ----------------------------------------------------------------
  auto* fig = app.add_subcommand(
      "figure1", "Compression bound curves for the qubit source: per-copy converse, "
                 "achievability, and second-order columns over an n grid");
  fig->configurable();
  minent::CurveOptions copt;
  long f_nmin = 50, f_nmax = 1000, f_step = 50;
  double f_eta = 0.0;
  std::string f_csv = "figure1.csv", f_dat;
  fig->add_option("--delta", copt.delta, "source eigenvalue (delta, 1-delta)")->default_val(0.9);
  fig->add_option("--eps", copt.eps, "fidelity parameter")->default_val(0.1);
  fig->add_option("--nmin", f_nmin, "grid start")->default_val(50);
  fig->add_option("--nmax", f_nmax, "grid end")->default_val(1000);
  fig->add_option("--step", f_step, "grid step")->default_val(50)->check(CLI::PositiveNumber);
  auto* eta_opt = fig->add_option(
      "--eta", f_eta, "fixed eta for the info-spectrum converse (default: optimized per n)");
  fig->add_option("--csv", f_csv, "CSV output path")->capture_default_str();
  fig->add_option("--dat", f_dat, "optional whitespace .dat output path");
  fig->callback([&] {
    if (std::exchange(dispatched, true)) return;
    if (f_nmin < 1 || f_nmax < f_nmin)
      throw CLI::ValidationError("--nmin/--nmax", "need 1 <= nmin <= nmax");
    for (long n = f_nmin; n <= f_nmax; n += f_step) copt.n_grid.push_back(n);
    if (eta_opt->count()) copt.eta_override = f_eta;
    const minent::CompressionCurves curves = minent::compression_curves(copt);
    std::ostringstream csv;
    curves.write_csv(csv);
    write_file(f_csv, csv.str());
    std::cout << "wrote " << curves.rows.size() << " rows to " << f_csv << "\n";
    if (!f_dat.empty()) {
      std::ostringstream dat;
      curves.write_dat(dat);
      write_file(f_dat, dat.str());
      std::cout << "wrote " << curves.rows.size() << " rows to " << f_dat << "\n";
    }
  });

  // classical ----------------------------------------------------------------
  auto* cls = app.add_subcommand(
      "classical", "Classical smoothed conditional min-entropy of a joint CSV table");
  cls->configurable();
  std::string c_joint;
  double c_eps = 0.0;
  std::string c_metric = "trace";
  std::string c_mode = "partial";
  bool c_relaxed = false;
  cls->add_option("--joint", c_joint, "CSV matrix path ('-' for stdin), rows = x, columns = y")
      ->required();
  cls->add_option("--eps", c_eps, "smoothing parameter")->required();
  cls->add_option("--metric", c_metric, "distance measure")
      ->check(CLI::IsMember({"trace", "purified"}))
      ->capture_default_str();
  cls->add_option("--mode", c_mode, "smoothing constraint flavor")
      ->check(CLI::IsMember({"partial", "global"}))
      ->capture_default_str();
  cls->add_flag("--relaxed", c_relaxed,
                "trace metric: use the exact breakpoint scan of the relaxed program");
  cls->callback([&] {
    if (std::exchange(dispatched, true)) return;
    minent::JointDistribution joint(1, 1, {1.0});
    try {
      joint = minent::JointDistribution::parse_csv(read_stream_or_file(c_joint));
    } catch (const std::invalid_argument& e) {
      throw CLI::ValidationError("--joint", e.what());
    }
    const minent::SmoothMode mode =
        c_mode == "partial" ? minent::SmoothMode::Partial : minent::SmoothMode::Global;
    double lambda = 0.0;
    if (c_metric == "trace")
      lambda = c_relaxed ? minent::hmin_trace_relaxed(joint, c_eps).lambda
                         : minent::hmin_trace_lp(joint, c_eps, mode);
    else
      lambda = minent::hmin_purified_classical(joint, c_eps, mode);
    std::cout << "lambda = " << num(lambda) << "\n";
    std::cout << "Hmin   = " << (lambda > 0.0 ? num(-std::log2(lambda)) : "inf") << "\n";
  });

  // verify ----------------------------------------------------------------
  auto* ver = app.add_subcommand("verify", "Run the randomized verification suites");
  ver->configurable();
  std::string v_suite = "all";
  minent::verify::Options vopt;
  ver->add_option("--suite", v_suite, "suite name or 'all'")->capture_default_str();
  ver->add_option("--trials", vopt.trials, "instances per randomized suite")
      ->default_val(200)
      ->check(CLI::PositiveNumber);
  ver->add_option("--seed", vopt.seed, "rng seed")->default_val(42);
  ver->callback([&] {
    if (std::exchange(dispatched, true)) return;
    std::vector<std::string> names;
    if (v_suite == "all")
      names = minent::verify::suite_names();
    else
      names.push_back(v_suite);
    bool all_ok = true;
    for (const std::string& name : names) {
      const minent::verify::SuiteReport rep = minent::verify::run_suite(name, vopt);
      all_ok = all_ok && rep.passed;
      std::printf("[%s] %-15s instances=%-6d worst=%-12.6g %.2fs\n",
                  rep.passed ? "PASS" : "FAIL", rep.name.c_str(), rep.instances, rep.worst,
                  rep.seconds);
      for (const std::string& note : rep.notes) std::printf("       %s\n", note.c_str());
      for (const std::string& failure : rep.failures)
        std::printf("       failed: %s\n", failure.c_str());
    }
    exit_code = all_ok ? 0 : 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
