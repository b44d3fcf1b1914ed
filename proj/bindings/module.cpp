#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "minent/asympt.hpp"
#include "minent/classical_smooth.hpp"
#include "minent/dist.hpp"
#include "minent/numerics.hpp"
#include "minent/psme.hpp"
#include "minent/spectrum.hpp"
#include "minent/verify.hpp"

namespace py = pybind11;
using namespace minent;

namespace {

SortedSpectrum spectrum_from_probs(const std::vector<double>& probs) {
  return SortedSpectrum::from(Distribution(probs));
}

SortedSpectrum spectrum_from_iid(const std::vector<double>& probs, long n) {
  return SortedSpectrum::from(iid_product(Distribution(probs), n));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smoothed min-entropy toolkit: quadratic-program smoothing solver, "
            "certificates, hypothesis-testing and information-spectrum quantities, "
            "and compression bound curves.";

  m.def("normal_quantile", &normal_quantile, py::arg("p"));
  m.def("normal_cdf", &normal_cdf, py::arg("x"));
  m.def(
      "log_sum_exp",
      [](const std::vector<double>& log2_terms) { return log_sum_exp_log2(log2_terms); },
      py::arg("log2_terms"), "log2 of the sum of 2**t over the given base-2 exponents.");

  m.def(
      "entropy", [](const std::vector<double>& p) { return entropy(Distribution(p)); },
      py::arg("probs"), "Shannon entropy in bits.");
  m.def(
      "variance", [](const std::vector<double>& p) { return variance(Distribution(p)); },
      py::arg("probs"), "Varentropy in bits squared.");

  py::class_<TypeClass>(m, "TypeClass")
      .def_readonly("log2_prob", &TypeClass::log2_prob)
      .def_readonly("log2_mult", &TypeClass::log2_mult)
      .def("__repr__", [](const TypeClass& c) {
        std::ostringstream os;
        os << "TypeClass(log2_prob=" << c.log2_prob << ", log2_mult=" << c.log2_mult << ")";
        return os.str();
      });

  m.def(
      "iid_classes",
      [](const std::vector<double>& p, long n) { return iid_product(Distribution(p), n).classes(); },
      py::arg("probs"), py::arg("n"),
      "Type classes of the n-fold i.i.d. product, sorted by probability.");

  py::class_<SortedSpectrum>(m, "Spectrum")
      .def_static("from_probs", &spectrum_from_probs, py::arg("probs"))
      .def_static("from_iid", &spectrum_from_iid, py::arg("probs"), py::arg("n"))
      .def("num_classes", &SortedSpectrum::num_classes)
      .def("log2_support_size", &SortedSpectrum::log2_support_size)
      .def("total_mass", &SortedSpectrum::total_mass)
      .def(
          "beta", [](const SortedSpectrum& s, double alpha) { return s.beta(alpha).log2(); },
          py::arg("alpha"), "log2 of the minimal test measure at success alpha.")
      .def("e_gamma", &SortedSpectrum::e_gamma, py::arg("log2_gamma"))
      .def("d_lower", &SortedSpectrum::d_lower, py::arg("eps"))
      .def("d_upper", &SortedSpectrum::d_upper, py::arg("eps"));

  py::class_<QpSolution>(m, "QpSolution")
      .def_readonly("log2_half_a", &QpSolution::log2_half_a)
      .def_readonly("achieved_overlap", &QpSolution::achieved_overlap)
      .def_readonly("log2_support", &QpSolution::log2_support)
      .def_readonly("flat", &QpSolution::flat)
      .def_property_readonly("log2_f", [](const QpSolution& s) { return s.log2_f.log2(); })
      .def_property_readonly("neg_hmin", [](const QpSolution& s) { return s.log2_f.log2(); })
      .def("__repr__", [](const QpSolution& s) {
        std::ostringstream os;
        os << "QpSolution(log2_f=" << s.log2_f.log2() << ", log2_half_a=" << s.log2_half_a << ")";
        return os.str();
      });

  m.def(
      "solve_qp",
      [](const std::vector<double>& p, double eps) { return solve_qp(Distribution(p), eps); },
      py::arg("probs"), py::arg("eps"),
      "Smoothing program over an explicit distribution; log2_f is -Hmin.");
  m.def(
      "solve_qp_iid",
      [](const std::vector<double>& p, long n, double eps) {
        return solve_qp(iid_product(Distribution(p), n), eps);
      },
      py::arg("probs"), py::arg("n"), py::arg("eps"),
      "Same program evaluated on the n-fold i.i.d. product via type classes.");
  m.def(
      "smoothing_vector",
      [](const std::vector<double>& p, double eps) {
        const Distribution dist(p);
        return smoothing_vector(dist, solve_qp(dist, eps));
      },
      py::arg("probs"), py::arg("eps"));
  m.def(
      "qp_oracle",
      [](const std::vector<double>& p, double eps) {
        const QpOracleResult r = qp_oracle(Distribution(p), eps);
        if (!r.converged) throw std::runtime_error("qp_oracle failed to converge");
        return py::make_tuple(r.value, r.g);
      },
      py::arg("probs"), py::arg("eps"),
      "Projected-gradient reference solver; returns (value, g).");
  m.def(
      "eta_diagnostic",
      [](const std::vector<double>& p, long n, double eps) {
        const SortedSpectrum s =
            n == 1 ? SortedSpectrum::from(Distribution(p))
                   : SortedSpectrum::from(iid_product(Distribution(p), n));
        return eta_diagnostic(s, solve_qp(s, eps));
      },
      py::arg("probs"), py::arg("n"), py::arg("eps"));

  py::class_<Certificate>(m, "Certificate")
      .def_readonly("primal_value", &Certificate::primal_value)
      .def_readonly("dual_value", &Certificate::dual_value)
      .def_readonly("gap_rel", &Certificate::gap_rel)
      .def_readonly("max_dual_eig", &Certificate::max_dual_eig)
      .def_readonly("primal_residual", &Certificate::primal_residual)
      .def_readonly("lambda_", &Certificate::lambda)
      .def_readonly("mu", &Certificate::mu)
      .def_readonly("g", &Certificate::g)
      .def_readonly("k_diag", &Certificate::k_diag)
      .def_readonly("feasible", &Certificate::feasible)
      .def_readonly("failure", &Certificate::failure);

  m.def(
      "build_certificate",
      [](const std::vector<double>& p, double eps) {
        const Distribution dist(p);
        return build_certificate(dist, eps, solve_qp(dist, eps));
      },
      py::arg("probs"), py::arg("eps"),
      "Primal/dual optimality certificate for an explicit distribution.");

  // Classical smoothed entropies over joint tables (row-major nested lists).
  auto to_joint = [](const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw std::invalid_argument("empty joint table");
    std::vector<double> flat;
    for (const auto& r : rows) {
      if (r.size() != rows[0].size()) throw std::invalid_argument("ragged joint table");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return JointDistribution(rows.size(), rows[0].size(), flat);
  };

  py::enum_<SmoothMode>(m, "SmoothMode")
      .value("PARTIAL", SmoothMode::Partial)
      .value("GLOBAL", SmoothMode::Global);

  m.def(
      "hmin_trace_relaxed",
      [to_joint](const std::vector<std::vector<double>>& rows, double eps) {
        return hmin_trace_relaxed(to_joint(rows), eps).lambda;
      },
      py::arg("joint"), py::arg("eps"));
  m.def(
      "hmin_trace_lp",
      [to_joint](const std::vector<std::vector<double>>& rows, double eps, SmoothMode mode) {
        return hmin_trace_lp(to_joint(rows), eps, mode);
      },
      py::arg("joint"), py::arg("eps"), py::arg("mode") = SmoothMode::Partial);
  m.def(
      "hmin_purified_classical",
      [to_joint](const std::vector<std::vector<double>>& rows, double eps, SmoothMode mode) {
        return hmin_purified_classical(to_joint(rows), eps, mode);
      },
      py::arg("joint"), py::arg("eps"), py::arg("mode"));
  m.def(
      "imax_global",
      [to_joint](const std::vector<std::vector<double>>& rows, double eps) {
        const ImaxResult r = imax_global_lp(to_joint(rows), eps);
        return py::make_tuple(r.value, r.q, r.t, r.r);
      },
      py::arg("joint"), py::arg("eps"));
  m.def(
      "imax_partial",
      [to_joint](const std::vector<std::vector<double>>& rows, double eps) {
        return imax_partial_lp(to_joint(rows), eps).value;
      },
      py::arg("joint"), py::arg("eps"));
  m.def(
      "imax_partial_witness_residual",
      [to_joint](const std::vector<std::vector<double>>& rows, double eps) {
        const JointDistribution p = to_joint(rows);
        return imax_partial_from_global(p, eps, imax_global_lp(p, eps)).max_residual;
      },
      py::arg("joint"), py::arg("eps"));

  py::enum_<Expansion>(m, "Expansion")
      .value("BETA", Expansion::Beta)
      .value("SPECTRUM_LOWER", Expansion::SpectrumLower)
      .value("SPECTRUM_UPPER", Expansion::SpectrumUpper)
      .value("PARTIAL_PURE", Expansion::PartialPure)
      .value("PARTIAL_PURE_THIRD", Expansion::PartialPureThird)
      .value("COMPRESSION", Expansion::Compression);

  m.def(
      "expand",
      [](double h, double v, double eps, long n, Expansion variant) {
        return expand({h, v, eps, n, variant});
      },
      py::arg("h"), py::arg("v"), py::arg("eps"), py::arg("n"), py::arg("variant"));

  m.def(
      "direct_achievability",
      [](const std::vector<double>& p, long n, double eps) {
        return direct_achievability(SortedSpectrum::from(iid_product(Distribution(p), n)), eps);
      },
      py::arg("probs"), py::arg("n"), py::arg("eps"), "log2 of the kept dimension.");

  py::class_<CurveRow>(m, "CurveRow")
      .def_readonly("n", &CurveRow::n)
      .def_readonly("qp_converse", &CurveRow::qp_converse)
      .def_readonly("dl_converse", &CurveRow::dl_converse)
      .def_readonly("is_achiev", &CurveRow::is_achiev)
      .def_readonly("direct_achiev", &CurveRow::direct_achiev)
      .def_readonly("second_order", &CurveRow::second_order)
      .def_readonly("dl_eta", &CurveRow::dl_eta);

  m.def(
      "compression_curves",
      [](double delta, double eps, long n_min, long n_max, long n_step,
         std::optional<double> eta) {
        CurveOptions opt;
        opt.delta = delta;
        opt.eps = eps;
        for (long n = n_min; n <= n_max; n += n_step) opt.n_grid.push_back(n);
        opt.eta_override = eta;
        return compression_curves(opt).rows;
      },
      py::arg("delta") = 0.9, py::arg("eps") = 0.1, py::arg("n_min") = 50,
      py::arg("n_max") = 1000, py::arg("n_step") = 50, py::arg("eta") = std::nullopt,
      "Per-copy compression bound curves for the qubit source.");

  m.def(
      "curves_csv",
      [](double delta, double eps, long n_min, long n_max, long n_step,
         std::optional<double> eta) {
        CurveOptions opt;
        opt.delta = delta;
        opt.eps = eps;
        for (long n = n_min; n <= n_max; n += n_step) opt.n_grid.push_back(n);
        opt.eta_override = eta;
        std::ostringstream os;
        compression_curves(opt).write_csv(os);
        return os.str();
      },
      py::arg("delta") = 0.9, py::arg("eps") = 0.1, py::arg("n_min") = 50,
      py::arg("n_max") = 1000, py::arg("n_step") = 50, py::arg("eta") = std::nullopt);

  m.def(
      "verify_suite",
      [](const std::string& name, std::uint64_t seed, int trials) {
        const verify::SuiteReport rep = verify::run_suite(name, {seed, trials});
        py::dict d;
        d["name"] = rep.name;
        d["passed"] = rep.passed;
        d["instances"] = rep.instances;
        d["worst"] = rep.worst;
        d["notes"] = rep.notes;
        d["failures"] = rep.failures;
        d["seconds"] = rep.seconds;
        return d;
      },
      py::arg("name"), py::arg("seed") = 42, py::arg("trials") = 200);
  m.def("verify_suite_names", [] { return verify::suite_names(); });

  m.attr("__version__") = "0.1.0";
}
