#pragma once

#include <string>
#include <vector>

#include "slepsense/filter.hpp"

namespace slepsense {

// One fidelity measurement taken with a band-shifted DPSS protocol.
struct BatteryEntry {
  int order = 0;            // DPSS order k
  double nw = 0.0;          // time-bandwidth product
  double omega_center = 0.0;  // center of the sensitive band, rad/s
  double band_lo = 0.0;     // rad/s
  double band_hi = 0.0;     // rad/s
  FilterFunction filter;    // amplitude filter of the shifted protocol
  double s_value = 0.0;     // measured fidelity in (0, 1]
  double std_err = 0.0;     // > 0
  bool saturated = false;   // fidelity at/below the sensitivity floor
};

struct MeasurementBattery {
  std::vector<BatteryEntry> entries;
};

struct EigenEstimate {
  double omega_center = 0.0;
  double s_hat = 0.0;
  double variance = 0.0;
  double band_concentration = 0.0;  // in-band fraction of the filter
  bool excluded = false;
};

// Single-point inversion of one measurement, treating the spectrum as flat
// across the band: s_hat = pi * (-ln s_value) / (lambda * I_tot) with lambda
// the filter's in-band fraction and I_tot its full one-sided integral (the
// classical eigenvalue bias correction). Variance propagated through -ln by
// the delta method. Saturated entries are excluded, not clipped.
EigenEstimate eigenestimate(const BatteryEntry& entry);

enum class EstimatorKind { multitaper, bayesian };

struct SpectrumEstimate {
  std::vector<double> grid;       // rad/s
  std::vector<double> values;     // >= 0
  std::vector<double> variances;  // per point
  EstimatorKind method = EstimatorKind::multitaper;
  // multitaper: final adaptive weight per battery entry, band-major order;
  // bayesian: per-point fused Fisher information.
  std::vector<double> weights;
  std::vector<int> iterations;    // multitaper: per band
  bool converged = true;
  std::vector<int> excluded_entries;  // indices into the source battery
};

struct MultitaperOptions {
  int max_iterations = 100;
  double tolerance = 1e-8;
};

// Thomson-style adaptive combination of the per-order eigenestimates in each
// band: weights d_k = lambda_k*S / (lambda_k*S + (1-lambda_k)*sigma2_broad)
// iterated from the equal-weight average, with sigma2_broad the equal-weight
// initial estimate times the summed leakage of the participating orders.
// Estimate variance from the effective degrees of freedom
// 2*(sum d^2 lambda)^2 / sum d^4 lambda^2.
SpectrumEstimate multitaper_estimate(const MeasurementBattery& battery,
                                     const MultitaperOptions& opts = {});

struct BayesianOptions {
  int segments_per_band = 4;
  double prior_scale = 0.5;   // prior std dev = prior_scale*prior + floor
  double prior_floor = 0.0;   // absolute floor on the prior std dev
};

// Per-band Gaussian MAP inversion of the linear forward model
// o_k = sum_j A[k][j] s_j, A[k][j] = (1/pi) * integral_seg_j F_k, with
// measurement covariance from the entry standard errors and a diagonal prior
// built from `prior`. Segments covered by several bands are fused by
// Fisher-information weighting; estimates are clipped at zero.
SpectrumEstimate bayesian_estimate(const MeasurementBattery& battery,
                                   const SpectrumEstimate& prior,
                                   const BayesianOptions& opts = {});

struct ProtocolConfig {
  int order = 0;
  double nw = 0.0;
  int length = 0;          // N
  double dt = 0.0;
  double omega_shift = 0.0;   // SSB carrier, rad/s
  double omega_center = 0.0;  // sensitive band center, rad/s
  double band_lo = 0.0;
  double band_hi = 0.0;
};

struct BatteryDesign {
  std::vector<ProtocolConfig> configs;  // band-major, then order
  double spacing = 0.0;                 // carrier spacing, rad/s
  double fwhm = 0.0;                    // FWHM of the widest order (= 2*spacing)
  int n_centers = 0;
};

// Lays out SSB-shifted DPSS protocols with carriers omega_s spanning
// [omega_min, omega_max] in n_centers steps, and the pulse duration solved so
// that the carriers sit at half the measured FWHM of the widest participating
// order: adjacent bands overlap and every order is assigned every carrier.
BatteryDesign design_battery(double omega_min, double omega_max, int n_centers,
                             const std::vector<int>& orders, double nw,
                             int length);

}  // namespace slepsense
