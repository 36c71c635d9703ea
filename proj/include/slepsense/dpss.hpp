#pragma once

#include <vector>

namespace slepsense {

// Parameters of a discrete prolate spheroidal sequence: length N, half-bandwidth
// W in (0, 1/2], sample interval dt (seconds) and order k in {0..N-1}.
// The target band in angular frequency is [-band_edge(), band_edge()].
struct DpssParams {
  int length = 0;
  double half_bandwidth = 0.0;
  double dt = 0.0;
  int order = 0;

  double band_edge() const;  // 2*pi*W/dt, rad/s
  double duration() const;   // N*dt, seconds
  void validate() const;     // throws std::invalid_argument
};

// A unit-norm, sign-fixed DPSS together with its spectral concentration.
// Sign convention: positive sum for even orders, positive first nonzero
// element for odd orders. Even orders are symmetric about the center index,
// odd orders antisymmetric.
struct DpssSequence {
  DpssParams params;
  std::vector<double> values;
  double concentration = 0.0;  // in-band spectral power fraction (eigenvalue)
};

// Real-valued spectrum of a sequence sampled on a uniform angular-frequency
// grid over [-pi/dt, pi/dt].
struct Wavefunction {
  std::vector<double> grid;    // rad/s, strictly increasing
  std::vector<double> values;
};

// Computes the order-k DPSS via the symmetric tridiagonal matrix that commutes
// with the time/band concentration kernel, then evaluates the concentration as
// the Rayleigh quotient against the sinc kernel
//   K[n,m] = sin(2*pi*W*(n-m)) / (pi*(n-m)),   K[n,n] = 2W.
// A direct dense eigensolve of K is unstable for large N because the top
// eigenvalues cluster exponentially near 1; the tridiagonal route has
// well-separated eigenvalues at every order.
DpssSequence generate_dpss(const DpssParams& params);

// Batch version sharing one eigendecomposition across orders.
std::vector<DpssSequence> generate_dpss_orders(int length, double half_bandwidth,
                                               double dt,
                                               const std::vector<int>& orders);

// Phase-centered discrete-time Fourier transform of an arbitrary real
// sequence, evaluated on grid_size uniform points over [-pi/dt, pi/dt].
// Sequences with definite parity about their center transform to purely
// real (even order) or purely imaginary (odd order) values; the real-valued
// component carrying the spectrum is returned.
Wavefunction sequence_wavefunction(const std::vector<double>& values, double dt,
                                   int grid_size);

// Wavefunction of a DPSS. Requires grid_size >= 2N.
Wavefunction dpswf(const DpssSequence& seq, int grid_size);

// Fraction of spectral power inside [-omega_b, omega_b], by trapezoidal
// quadrature with linear interpolation at the band edges. Result in [0, 1].
double spectral_concentration(const Wavefunction& wf, double omega_b);

// Out-of-band power of `flat_wf` relative to `dpss_wf` in dB, both measured
// along the positive frequency axis: 10*log10((1-c_flat)/(1-c_dpss)) with
// c = band power over [0, omega_b] relative to [0, grid max].
// Throws if the reference concentrates all its power in band.
double leakage_ratio_db(const Wavefunction& dpss_wf, const Wavefunction& flat_wf,
                        double omega_b);

}  // namespace slepsense
