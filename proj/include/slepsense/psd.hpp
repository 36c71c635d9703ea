#pragma once

#include <limits>
#include <string>
#include <vector>

namespace slepsense {

enum class Quadrature { amplitude, dephasing };

std::string to_string(Quadrature q);

// One-sided power spectral density S(omega), omega >= 0, in the toolkit's
// shared convention: a stationary process with PSD S has variance
//   var = (KAPPA/pi) * integral_0^inf S(omega) d_omega,
// with KAPPA = psd_variance_factor() below. The factor is fixed once here so
// that synthesis, periodograms and fidelity overlaps cannot drift apart.
double psd_variance_factor();  // = 4

struct CombTooth {
  double omega_lo = 0.0;  // rad/s
  double omega_hi = 0.0;  // rad/s
  double height = 0.0;    // PSD units
};

enum class PsdKind { white, comb, single_line, tabulated };

struct PsdModel {
  PsdKind kind = PsdKind::white;
  Quadrature quadrature = Quadrature::amplitude;

  double level = 0.0;                 // white
  std::vector<CombTooth> teeth;       // comb; non-overlapping
  double line_omega = 0.0;            // single_line position, rad/s
  double line_power = 0.0;            // single_line integrated power, S*rad/s
  std::vector<double> grid;           // tabulated
  std::vector<double> values;         // tabulated
  double cutoff = std::numeric_limits<double>::infinity();  // rad/s

  static PsdModel white(double level, Quadrature q, double cutoff);
  static PsdModel comb(std::vector<CombTooth> teeth, Quadrature q);
  static PsdModel single_line(double omega, double integrated_power,
                              Quadrature q);
  static PsdModel tabulated(std::vector<double> grid,
                            std::vector<double> values, Quadrature q);

  void validate() const;
  // Density at omega; excludes the delta contribution of single_line.
  double density(double omega) const;
  // Highest frequency with nonzero support (infinite for white without cutoff).
  double support_max() const;
  // integral_0^inf S d_omega, including line power.
  double integral() const;
  // Process variance (KAPPA/pi times the integral).
  double variance() const;
};

}  // namespace slepsense
