#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "slepsense/envelope.hpp"
#include "slepsense/noise.hpp"
#include "slepsense/psd.hpp"

namespace slepsense {

enum class Axis { x, y, z };

struct QubitState {
  std::array<double, 3> bloch{0.0, 0.0, 1.0};

  double norm() const;
  static QubitState along(Axis axis, double sign = 1.0);
};

struct MeasurementRecord {
  Axis axis = Axis::z;
  int shots = 0;
  int up_count = 0;

  double p_up() const { return shots > 0 ? double(up_count) / shots : 0.0; }
};

// Per-axis averaged outcome of the three-axis protocol. Preparation and
// readout are both along the positive axes, so a noiseless identity gives
// p_x = p_y = p_z = 1 and s_value = (1 + p_x - p_y - p_z)/2 = 0. The
// combination cancels the dephasing-induced decays between the x record and
// the y/z records, leaving the amplitude-quadrature signal;
// fidelity_estimate = 1 - s_value reproduces the amplitude-only fidelity.
struct ProtocolResult {
  std::array<double, 3> p{0.0, 0.0, 0.0};          // mean p_up per axis
  std::array<double, 3> p_std_err{0.0, 0.0, 0.0};  // standard error per axis
  double s_value = 0.0;
  double s_std_err = 0.0;
  double fidelity_estimate = 0.0;  // 1 - s_value
  double fidelity_z = 0.0;         // z-record-only estimate, bias not removed
  double fidelity_z_std_err = 0.0;
};

// One exact axis-angle rotation per segment n under
//   H_n = (1/2) [ Re(Omega_n)(1+beta_n) sigma_x
//               + Im(Omega_n)(1+beta_n) sigma_y + b_n sigma_z ],
// Omega_n = rabi_max*samples[n]. Trajectories must match the envelope length;
// either may be empty (treated as zero). Pure-state norm is preserved.
QubitState evolve(const QubitState& state, const ControlEnvelope& env,
                  const NoiseTrajectory& amp_noise,
                  const NoiseTrajectory& deph_noise);

// Projective measurement: p_ideal = (1 + bloch.axis)/2, binomial shots.
MeasurementRecord measure(const QubitState& state, Axis axis, int shots,
                          std::uint64_t seed);

struct EnsembleSpec {
  std::optional<PsdModel> amplitude;
  std::optional<PsdModel> dephasing;
  int realizations = 1;
};

// Three-axis tomographic protocol: prepares +x, +y, +z, evolves each under
// independently drawn noise (per-axis, per-realization derived seeds),
// measures along the preparation axis and combines the averages into
// s_value. Deterministic for fixed (env, spec, shots, seed) at any thread
// count.
ProtocolResult run_three_axis(const ControlEnvelope& env,
                              const EnsembleSpec& spec, int shots_per_axis,
                              std::uint64_t seed, int threads = 1);

struct FidelityStats {
  double mean = 1.0;
  double std_err = 0.0;
};

// Ensemble-mean state fidelity against the noiseless reference evolution,
// prepared along +z; shots = 0 measures the Bloch projection exactly.
FidelityStats simulate_fidelity(const ControlEnvelope& env,
                                const EnsembleSpec& spec, int shots,
                                std::uint64_t seed, int threads = 1);

struct CalibrationConfig {
  std::vector<double> alpha_grid;  // ascending modulation depths
  double omega_sid = 0.0;          // probe frequency, rad/s
  int phases = 10;                 // linearly sampled phase offsets
  int shots = 100;
  int repetitions = 50;            // repeats per modulation depth
  std::optional<PsdModel> background;  // intrinsic noise stand-in
};

struct CalibrationPoint {
  double alpha = 0.0;
  double mean_fidelity = 0.0;
  double std_err = 0.0;
  bool detected = false;  // signal below baseline by >= 1 combined std err
};

struct CalibrationResult {
  std::vector<CalibrationPoint> points;
  double baseline_mean = 1.0;
  double baseline_std_err = 0.0;
  double threshold_alpha = 0.0;  // smallest detected alpha; 0 = none
  double threshold_db = 0.0;     // 20*log10(1+alpha)
  bool detected = false;
};

// Sensitivity calibration: for each modulation depth, the modulated protocol
// is run over the phase grid interleaved with unmodulated baseline runs; the
// detection threshold is the smallest depth whose mean infidelity exceeds
// the baseline by at least one combined standard error.
CalibrationResult calibrate_sensitivity(const ControlEnvelope& env,
                                        const CalibrationConfig& cfg,
                                        std::uint64_t seed, int threads = 1);

}  // namespace slepsense
