#include "slepsense/noise.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "slepsense/fft.hpp"

namespace slepsense {

namespace {
constexpr double kPi = std::numbers::pi;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}
}  // namespace

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x51ed2701ULL));
}

NoiseTrajectory synthesize(const PsdModel& psd, int n, double dt,
                           std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("synthesize: need at least two samples");
  if (!(dt > 0.0)) throw std::invalid_argument("synthesize: dt must be positive");
  psd.validate();
  const double nyquist = kPi / dt;
  if (psd.support_max() > nyquist * (1.0 + 1e-12))
    throw std::invalid_argument("synthesize: PSD support above Nyquist");

  NoiseTrajectory traj;
  traj.dt = dt;
  traj.seed = seed;
  traj.samples.assign(n, 0.0);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uphase(0.0, 2.0 * kPi);

  if (psd.kind == PsdKind::single_line) {
    // one cosine at the exact line frequency; no grid snapping
    const double a =
        std::sqrt(2.0 * psd.variance());  // var of a*cos(...) is a^2/2
    const double phi = uphase(rng);
    for (int m = 0; m < n; ++m)
      traj.samples[m] = a * std::cos(psd.line_omega * m * dt + phi);
    return traj;
  }

  // harmonic superposition on the DFT grid via one inverse transform
  const double d_omega = 2.0 * kPi / (n * dt);
  std::vector<std::complex<double>> spec(n, 0.0);
  const double var_per_density = psd_variance_factor() / kPi * d_omega;
  for (int j = 1; j <= n / 2; ++j) {
    const double s = psd.density(j * d_omega);
    if (s == 0.0) {
      uphase(rng);  // keep the phase stream aligned across spectra
      continue;
    }
    const double a = std::sqrt(2.0 * var_per_density * s);
    const double phi = uphase(rng);
    if (2 * j == n) {
      // Nyquist line is its own conjugate: a*cos(pi*m + phi)
      spec[j] = std::complex<double>(n * a * std::cos(phi), 0.0);
    } else {
      spec[j] = std::polar(0.5 * n * a, phi);
      spec[n - j] = std::conj(spec[j]);
    }
  }
  const auto x = ifft(spec);
  for (int m = 0; m < n; ++m) traj.samples[m] = x[m].real() / n;
  return traj;
}

PsdModel periodogram(const NoiseTrajectory& traj) {
  const int n = traj.size();
  if (n < 2) throw std::invalid_argument("periodogram: need at least two samples");
  const auto spec = fft_real(traj.samples);
  const double d_omega = 2.0 * kPi / (n * traj.dt);
  std::vector<double> grid, values;
  grid.reserve(n / 2);
  values.reserve(n / 2);
  for (int j = 1; j <= n / 2; ++j) {
    grid.push_back(j * d_omega);
    // inverse of the synthesis normalization: a^2 = 4|X|^2/n^2,
    // S = a^2 / (2 * KAPPA/pi * d_omega)
    const double mag2 = std::norm(spec[j]);
    double s = 2.0 * mag2 / (n * n) /
               (psd_variance_factor() / kPi * d_omega);
    if (2 * j == n) s *= 0.5;  // Nyquist bin has no conjugate partner
    values.push_back(s);
  }
  return PsdModel::tabulated(std::move(grid), std::move(values),
                             Quadrature::amplitude);
}

NoiseTrajectory segment_average(const NoiseTrajectory& traj, int factor) {
  if (factor < 1) throw std::invalid_argument("segment_average: bad factor");
  if (traj.size() % factor != 0)
    throw std::invalid_argument("segment_average: length not divisible");
  NoiseTrajectory out;
  out.dt = traj.dt * factor;
  out.seed = traj.seed;
  out.samples.resize(traj.size() / factor);
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    double acc = 0.0;
    for (int j = 0; j < factor; ++j) acc += traj.samples[i * factor + j];
    out.samples[i] = acc / factor;
  }
  return out;
}

PsdModel engineered_comb_spectrum() {
  // Contiguous teeth between 1.4 and 8.3 kHz with a hard cutoff; heights are
  // toolkit constants tuned so the strongest tooth gives an overlap of ~0.05
  // under the order-1 protocol of the demo battery (see cmd_reconstruct).
  const double k = 2.0 * kPi * 1e3;  // kHz to rad/s
  const double s0 = 6.2e-8;          // PSD scale, tuned against predict_fidelity
  std::vector<CombTooth> teeth = {
      {1.4 * k, 2.6 * k, 0.55 * s0}, {2.6 * k, 3.8 * k, 1.00 * s0},
      {3.8 * k, 5.0 * k, 0.75 * s0}, {5.0 * k, 6.2 * k, 0.45 * s0},
      {6.2 * k, 7.3 * k, 0.30 * s0}, {7.3 * k, 8.3 * k, 0.20 * s0},
  };
  return PsdModel::comb(std::move(teeth), Quadrature::amplitude);
}

}  // namespace slepsense
