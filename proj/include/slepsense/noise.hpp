#pragma once

#include <cstdint>
#include <vector>

#include "slepsense/psd.hpp"

namespace slepsense {

// Stationary Gaussian-process realization on a uniform time grid.
// Amplitude-quadrature trajectories are dimensionless multipliers beta(t_n);
// dephasing trajectories are additive sigma_z rates in rad/s.
struct NoiseTrajectory {
  std::vector<double> samples;
  double dt = 0.0;
  std::uint64_t seed = 0;

  int size() const { return static_cast<int>(samples.size()); }
};

// Deterministic stream splitting: same (seed, stream) always yields the same
// derived seed, independent of call order or thread count.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Harmonic-superposition synthesis: a sum of cosines on the discrete grid
// omega_j = 2*pi*j/(n*dt) with amplitudes a_j = sqrt(2 * KAPPA/pi * S * d_omega)
// and independent uniform phases, realized through an inverse FFT. Single-line
// models synthesize one cosine at the exact line frequency instead of
// snapping to the grid. PSD support above Nyquist pi/dt is an error.
NoiseTrajectory synthesize(const PsdModel& psd, int n, double dt,
                           std::uint64_t seed);

// One-sided periodogram with the same normalization as synthesize, so that
// synthesize -> periodogram is round-trip consistent in expectation.
PsdModel periodogram(const NoiseTrajectory& traj);

// Averages consecutive groups of `factor` samples; for mapping trajectories
// synthesized on a finer grid onto a coarser piecewise-constant control grid.
NoiseTrajectory segment_average(const NoiseTrajectory& traj, int factor);

// Engineered desk-scale comb: contiguous teeth spanning ~1.4-8.3 kHz with a
// hard high-frequency cutoff, heights set so the strongest tooth produces an
// overlap of ~0.05 under the order-1, NW=7 shifted protocol of
// design_battery's demo configuration.
PsdModel engineered_comb_spectrum();

}  // namespace slepsense
