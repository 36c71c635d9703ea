#include "slepsense/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "slepsense/fft.hpp"

namespace slepsense {

namespace {
constexpr double kPi = std::numbers::pi;
}

double ControlEnvelope::signed_area() const {
  double acc = 0.0;
  for (const auto& s : samples) acc += s.real();
  return acc * rabi_max * dt;
}

double ControlEnvelope::unsigned_area() const {
  double acc = 0.0;
  for (const auto& s : samples) acc += std::abs(s);
  return acc * std::abs(rabi_max) * dt;
}

double ControlEnvelope::peak_multiplier() const {
  double peak = 0.0;
  for (const auto& s : samples) peak = std::max(peak, std::abs(s));
  return peak;
}

bool ControlEnvelope::peak_exceeds_unit() const {
  return peak_multiplier() > 1.0 + 1e-12;
}

void ControlEnvelope::validate() const {
  if (samples.empty()) throw std::invalid_argument("envelope: no samples");
  if (!(dt > 0.0)) throw std::invalid_argument("envelope: dt must be positive");
  if (!(rabi_max >= 0.0))
    throw std::invalid_argument("envelope: rabi_max must be nonnegative");
}

void SidParams::validate() const {
  if (!(alpha >= 0.0) || alpha >= 1.0)
    throw std::invalid_argument("sid: modulation depth must lie in [0, 1)");
}

ControlEnvelope envelope_from_sequence(const DpssSequence& seq, double rabi_max,
                                       double target_area) {
  seq.params.validate();
  if (!(rabi_max > 0.0))
    throw std::invalid_argument("envelope: rabi_max must be positive");
  const double dt = seq.params.dt;
  double signed_sum = 0.0, peak = 0.0;
  for (double v : seq.values) {
    signed_sum += v;
    peak = std::max(peak, std::abs(v));
  }
  const double raw_area = signed_sum * dt;
  if (std::abs(raw_area) < 1e-12 * peak * seq.values.size() * dt)
    throw area_normalization_error(
        "envelope: sequence has zero signed area; use peak normalization");

  // scale c so that sum c*v_n*dt = target_area
  const double c = target_area / raw_area;
  const double needed_peak = std::abs(c) * peak;

  ControlEnvelope env;
  env.dt = dt;
  env.band_halfwidth = seq.params.band_edge();
  env.samples.reserve(seq.values.size());
  if (needed_peak <= rabi_max) {
    env.rabi_max = needed_peak;
    env.target_area = target_area;
    for (double v : seq.values)
      env.samples.emplace_back(c * v / needed_peak, 0.0);
  } else {
    // requested area exceeds the available peak rate: cap the peak and keep
    // the achievable area on record
    env.rabi_max = rabi_max;
    env.target_area = target_area * rabi_max / needed_peak;
    const double sgn = c < 0.0 ? -1.0 : 1.0;
    for (double v : seq.values) env.samples.emplace_back(sgn * v / peak, 0.0);
  }
  return env;
}

ControlEnvelope envelope_from_sequence_peak(const DpssSequence& seq,
                                            double rabi_max) {
  seq.params.validate();
  if (!(rabi_max > 0.0))
    throw std::invalid_argument("envelope: rabi_max must be positive");
  double peak = 0.0;
  for (double v : seq.values) peak = std::max(peak, std::abs(v));
  if (!(peak > 0.0)) throw std::invalid_argument("envelope: zero sequence");
  ControlEnvelope env;
  env.dt = seq.params.dt;
  env.rabi_max = rabi_max;
  env.band_halfwidth = seq.params.band_edge();
  env.samples.reserve(seq.values.size());
  for (double v : seq.values) env.samples.emplace_back(v / peak, 0.0);
  env.target_area = env.signed_area();
  return env;
}

ControlEnvelope flat_top_envelope(int length, int order, double dt) {
  if (length < 1) throw std::invalid_argument("flat_top: length must be positive");
  if (order < 0 || order >= length)
    throw std::invalid_argument("flat_top: order must lie in {0..N-1}");
  if (!(dt > 0.0)) throw std::invalid_argument("flat_top: dt must be positive");
  ControlEnvelope env;
  env.dt = dt;
  env.rabi_max = 1.0;
  env.samples.resize(length);
  const int segments = order + 1;
  for (int i = 0; i < length; ++i) {
    // segment boundaries at round(j*N/(order+1))
    const int seg = std::min(segments - 1, (i * segments) / length);
    env.samples[i] = (seg % 2 == 0) ? 1.0 : -1.0;
  }
  env.target_area = env.signed_area();
  return env;
}

ControlEnvelope apply_sid_modulation(const ControlEnvelope& env,
                                     const SidParams& p) {
  env.validate();
  p.validate();
  ControlEnvelope out = env;
  for (int n = 0; n < out.size(); ++n)
    out.samples[n] *= 1.0 + p.alpha * std::cos(p.omega * n * env.dt + p.phase);
  return out;
}

ControlEnvelope cos_shift(const ControlEnvelope& env, double omega_s) {
  env.validate();
  if (omega_s < 0.0 || omega_s > kPi / env.dt - env.band_halfwidth)
    throw std::invalid_argument("cos_shift: carrier outside the resolvable range");
  ControlEnvelope out = env;
  for (int n = 0; n < out.size(); ++n)
    out.samples[n] *= std::cos(n * omega_s * env.dt);
  return out;
}

std::vector<double> hilbert(const std::vector<double>& values) {
  const int n = static_cast<int>(values.size());
  if (n < 2) throw std::invalid_argument("hilbert: need at least two samples");
  auto spec = fft_real(values);
  // analytic-signal mask: double positives, zero negatives, keep DC/Nyquist
  for (int k = 1; k < (n + 1) / 2; ++k) spec[k] *= 2.0;
  for (int k = n / 2 + 1; k < n; ++k) spec[k] = 0.0;
  auto analytic = ifft(spec);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = analytic[i].imag() / n;
  return out;
}

ControlEnvelope ssb_shift(const ControlEnvelope& env, double omega_s,
                          Sideband sideband) {
  env.validate();
  // the retained band must clear DC: [omega_s, omega_s + wB] for upper needs
  // omega_s >= 0, the lower mirror needs omega_s >= wB
  const double min_carrier =
      sideband == Sideband::upper ? 0.0 : env.band_halfwidth;
  if (omega_s < min_carrier || omega_s + env.band_halfwidth > kPi / env.dt)
    throw std::invalid_argument("ssb_shift: carrier outside the valid range");
  std::vector<double> re(env.samples.size());
  for (int n = 0; n < env.size(); ++n) {
    if (std::abs(env.samples[n].imag()) > 1e-12)
      throw std::invalid_argument("ssb_shift: requires an x-quadrature envelope");
    re[n] = env.samples[n].real();
  }
  const auto h = hilbert(re);
  const double sgn = sideband == Sideband::upper ? -1.0 : 1.0;
  ControlEnvelope out = env;
  for (int n = 0; n < out.size(); ++n) {
    const double th = n * omega_s * env.dt;
    out.samples[n] = re[n] * std::cos(th) + sgn * h[n] * std::sin(th);
  }
  return out;
}

}  // namespace slepsense
