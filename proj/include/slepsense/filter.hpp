#pragma once

#include <string>
#include <vector>

#include "slepsense/envelope.hpp"
#include "slepsense/psd.hpp"

namespace slepsense {

// Control transfer function sampled on a one-sided angular frequency grid.
struct FilterFunction {
  std::vector<double> grid;    // rad/s, >= 0, strictly increasing
  std::vector<double> values;  // >= 0
  Quadrature quadrature = Quadrature::amplitude;
  std::string norm_convention;

  // integral over [0, pi/dt], filled by the constructing routine (closed form
  // via Parseval for amplitude filters); 0 when unknown.
  double total_integral = 0.0;

  void validate() const;
  // Width of the half-maximum region: distance between the first and last
  // crossing of max(F)/2.
  double fwhm() const;
  // Trapezoidal integral of F over [omega_lo, omega_hi], interpolating at the
  // interval ends.
  double band_integral(double omega_lo, double omega_hi) const;
};

// First-order amplitude filter for multiplicative drive noise:
//   F(omega) = |sum_n Omega_n exp(-i*omega*n*dt) * dt|^2,
// with Omega_n the physical complex Rabi rate, evaluated exactly at each
// requested grid point. With the shared PSD convention the weak-noise overlap
// (1/pi) * integral F*S equals one quarter of the variance of the accumulated
// rotation-angle error, and exp(-overlap) reproduces the ensemble-averaged
// return probability of the protocol.
FilterFunction amplitude_filter(const ControlEnvelope& env,
                                const std::vector<double>& grid);

// First-order dephasing filter of a resonantly driven qubit, from the
// toggling-frame trajectory of the sigma_z coupling along the accumulated
// drive angle. Defined for x-quadrature (real) envelopes. The per-segment
// integrals are exact for piecewise-constant drives.
FilterFunction dephasing_filter(const ControlEnvelope& env,
                                const std::vector<double>& grid);

struct FidelityPrediction {
  double f_av = 1.0;      // exp(-overlap)
  double overlap = 0.0;   // sum over quadratures
  double overlap_amplitude = 0.0;
  double overlap_dephasing = 0.0;
};

// overlap_i = (1/pi) * integral F_i(omega) S_i(omega) d_omega by trapezoidal
// quadrature on the filter grid (delta lines add (1/pi)*F(omega_0)*power).
// Filters are paired with PSDs of the matching quadrature; tabulated PSDs
// must share the filter grid.
FidelityPrediction predict_fidelity(const std::vector<FilterFunction>& filters,
                                    const std::vector<PsdModel>& psds);

// Measurement sensitivity floor: infidelities below this are treated as
// undetectable.
double sensitivity_floor();  // = 0.005

enum class SidBackend { analytic, simulated };

struct SidScanPoint {
  double omega = 0.0;
  double mean_infidelity = 0.0;
  double filter_estimate = 0.0;  // F(omega) reconstructed from the fidelity
  bool at_floor = false;
};

struct SidScan {
  std::vector<SidScanPoint> points;
  FilterFunction to_filter() const;  // estimates as a FilterFunction table
};

// Frequency-resolved reconstruction of the amplitude filter: for each probe
// frequency, applies the single-frequency modulation over `phases` uniformly
// spaced phase offsets, averages the fidelity (analytic prediction or exact
// time-domain simulation of the modulated drive), and inverts the overlap
// relation for the equivalent single-line PSD of the modulation,
// integral S = pi*alpha^2/8. Points whose mean infidelity falls below the
// sensitivity floor are flagged and reported at the floor-equivalent value.
SidScan reconstruct_filter_by_sid(const ControlEnvelope& env, double alpha,
                                  const std::vector<double>& omega_grid,
                                  int phases,
                                  SidBackend backend = SidBackend::analytic);

}  // namespace slepsense
