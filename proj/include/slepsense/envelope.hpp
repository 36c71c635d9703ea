#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "slepsense/dpss.hpp"

namespace slepsense {

// Piecewise-constant drive envelope. samples[n] is the dimensionless complex
// drive multiplier over [n*dt, (n+1)*dt): real part drives sigma_x, imaginary
// part sigma_y. The physical Rabi rate of sample n is rabi_max * samples[n]
// (rad/s). Nominal envelopes keep |samples[n]| <= 1; modulation may push the
// multiplier above 1, which is recorded rather than clipped.
struct ControlEnvelope {
  std::vector<std::complex<double>> samples;
  double dt = 0.0;               // seconds
  double rabi_max = 0.0;         // rad/s, peak drive scale
  double target_area = 0.0;      // rad, intended signed rotation angle
  double band_halfwidth = 0.0;   // rad/s; 0 when not derived from a DPSS

  int size() const { return static_cast<int>(samples.size()); }
  double duration() const { return samples.size() * dt; }
  // Signed rotation angle sum Re(samples[n]) * rabi_max * dt.
  double signed_area() const;
  // Integral of |rabi_max * samples[n]| * dt.
  double unsigned_area() const;
  double peak_multiplier() const;
  bool peak_exceeds_unit() const;
  void validate() const;
};

struct area_normalization_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Single-frequency system-identification modulation
//   beta(t) = alpha * cos(omega * t + phase),
// applied multiplicatively to the drive. alpha must stay below 1 so the
// modulated envelope keeps the sign structure of the original.
struct SidParams {
  double alpha = 0.0;
  double omega = 0.0;   // rad/s
  double phase = 0.0;   // rad
  void validate() const;
};

// Rescales a sequence to a drive envelope whose signed area equals
// target_area. The recorded rabi_max is reduced to the actual peak rate when
// the requested peak allows it; if target_area would demand a peak above
// rabi_max, the peak is capped at rabi_max and the shortfall is reflected in
// the stored target_area. Odd-order sequences have zero signed area, which
// makes area normalization infeasible (area_normalization_error); use
// envelope_from_sequence_peak for those protocols.
ControlEnvelope envelope_from_sequence(const DpssSequence& seq, double rabi_max,
                                       double target_area);

// Peak normalization: max |sample| = 1, physical peak = rabi_max.
ControlEnvelope envelope_from_sequence_peak(const DpssSequence& seq,
                                            double rabi_max);

// Unit-amplitude square wave with exactly `order` sign changes at equally
// spaced boundaries: order 0 is a constant pulse, order 1 a rotary spin echo.
ControlEnvelope flat_top_envelope(int length, int order, double dt);

// samples[n] *= 1 + alpha*cos(omega*n*dt + phase)
ControlEnvelope apply_sid_modulation(const ControlEnvelope& env,
                                     const SidParams& p);

// samples[n] *= cos(n*omega_s*dt): relocates spectral weight to bands
// centered at +-omega_s (both sidebands kept). Requires
// 0 <= omega_s <= pi/dt - band_halfwidth.
ControlEnvelope cos_shift(const ControlEnvelope& env, double omega_s);

// Discrete Hilbert transform by DFT bin masking: zero the negative-frequency
// bins, double the positive ones (DC and Nyquist untouched), inverse
// transform, imaginary part.
std::vector<double> hilbert(const std::vector<double>& values);

enum class Sideband { upper, lower };

// Single-sideband shift: v[n]*cos(n*omega_s*dt) -+ H[v][n]*sin(n*omega_s*dt),
// retaining the band [omega_s, omega_s + band_halfwidth] (upper) or its
// mirror below the carrier (lower). The retained band must clear DC
// (omega_s >= 0 for upper, >= band_halfwidth for lower) and stay below
// Nyquist. Input must be a real (x-quadrature) envelope.
ControlEnvelope ssb_shift(const ControlEnvelope& env, double omega_s,
                          Sideband sideband);

}  // namespace slepsense
