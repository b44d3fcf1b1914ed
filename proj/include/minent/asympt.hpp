#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "minent/dist.hpp"
#include "minent/spectrum.hpp"

namespace minent {

/// Closed-form truncated expansion n*h + sign * sqrt(n*v) * quantile(arg).
/// The variant selects the quantile argument and sign; the third-order
/// variant subtracts (1/2) log2 n on top of the second-order form.
enum class Expansion {
  Beta,              // n h - sqrt(n v) Q(alpha)
  SpectrumLower,     // n h + sqrt(n v) Q(eps)
  SpectrumUpper,     // n h - sqrt(n v) Q(eps)
  PartialPure,       // n h + sqrt(n v) Q(sqrt(1 - eps^2))
  PartialPureThird,  // PartialPure - (1/2) log2 n
  Compression,       // n h + sqrt(n v) Q(sqrt(1 - eps))
};

struct ExpansionSpec {
  double h = 0.0;  // first-order coefficient, bits
  double v = 0.0;  // variance, bits^2
  double eps = 0.0;
  long n = 1;
  Expansion variant = Expansion::Compression;
};

double expand(const ExpansionSpec& spec);

/// log2 of the compressed dimension of the eigenvalue-cutoff protocol:
/// keep every class at least as likely as the information-spectrum
/// threshold for smoothing 1 - sqrt(1 - eps).
double direct_achievability(const SortedSpectrum& spec, double eps);

struct DlConverse {
  double value = 0.0;  // best (largest) converse over the eta grid
  double eta = 0.0;
};

/// Info-spectrum converse sup_eta [ -d_lower(eps + eta) + log2 eta ].
DlConverse dl_converse(const SortedSpectrum& spec, double eps, const std::vector<double>& eta_grid);

/// Default 200-point logarithmic eta grid on (1e-6, 1 - eps - 1e-6).
std::vector<double> default_eta_grid(double eps);

struct CurveRow {
  long n = 0;
  double qp_converse = 0.0;
  double dl_converse = 0.0;
  double is_achiev = 0.0;
  double direct_achiev = 0.0;
  double second_order = 0.0;
  double dl_eta = 0.0;  // maximizing eta behind dl_converse
};

/// Per-copy compression bound curves for the qubit source (delta, 1 - delta).
struct CompressionCurves {
  double delta = 0.0;
  double eps = 0.0;
  std::vector<CurveRow> rows;

  /// CSV with header n,qp_converse,dl_converse,is_achiev,direct_achiev,second_order.
  void write_csv(std::ostream& os) const;
  /// Whitespace-separated, no header; columns
  /// n qp_converse second_order dl_converse is_achiev direct_achiev.
  void write_dat(std::ostream& os) const;
};

struct CurveOptions {
  double delta = 0.9;
  double eps = 0.1;
  std::vector<long> n_grid;                 // defaults to 50..1000 step 50
  std::optional<double> eta_override;       // fixed eta instead of the grid optimum
};

CompressionCurves compression_curves(const CurveOptions& opt);

}  // namespace minent
