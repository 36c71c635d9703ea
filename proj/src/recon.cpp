#include "slepsense/recon.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <stdexcept>

#include "slepsense/dpss.hpp"

namespace slepsense {

namespace {
constexpr double kPi = std::numbers::pi;
}

EigenEstimate eigenestimate(const BatteryEntry& entry) {
  EigenEstimate est;
  est.omega_center = entry.omega_center;
  const double band_integral =
      entry.filter.band_integral(entry.band_lo, entry.band_hi);
  est.band_concentration =
      entry.filter.total_integral > 0.0
          ? band_integral / entry.filter.total_integral
          : 0.0;
  if (entry.saturated || entry.s_value <= sensitivity_floor()) {
    est.excluded = true;
    est.variance = std::numeric_limits<double>::infinity();
    return est;
  }
  if (entry.s_value > 1.0 + 1e-12)
    throw std::invalid_argument("eigenestimate: fidelity above 1");
  if (!(entry.std_err > 0.0))
    throw std::invalid_argument("eigenestimate: std_err must be positive");
  if (!(band_integral > 0.0))
    throw std::invalid_argument("eigenestimate: filter carries no band power");
  const double s = std::min(entry.s_value, 1.0);
  const double overlap = -std::log(s);
  est.s_hat = kPi * overlap / band_integral;
  const double overlap_std = entry.std_err / s;  // delta method through -ln
  est.variance = (kPi / band_integral) * (kPi / band_integral) * overlap_std *
                 overlap_std;
  return est;
}

namespace {
struct BandGroup {
  double center = 0.0;
  std::vector<int> entries;  // indices into the battery
};

std::vector<BandGroup> group_by_band(const MeasurementBattery& battery) {
  std::map<long long, BandGroup> groups;  // keyed on rounded center
  for (int i = 0; i < static_cast<int>(battery.entries.size()); ++i) {
    const double c = battery.entries[i].omega_center;
    const long long key = llround(c * 1e6);
    auto& g = groups[key];
    g.center = c;
    g.entries.push_back(i);
  }
  std::vector<BandGroup> out;
  out.reserve(groups.size());
  for (auto& [k, g] : groups) out.push_back(std::move(g));
  return out;
}
}  // namespace

SpectrumEstimate multitaper_estimate(const MeasurementBattery& battery,
                                     const MultitaperOptions& opts) {
  if (battery.entries.empty())
    throw std::invalid_argument("multitaper: empty battery");
  SpectrumEstimate out;
  out.method = EstimatorKind::multitaper;
  out.weights.assign(battery.entries.size(), 0.0);

  for (const auto& band : group_by_band(battery)) {
    std::vector<int> used;
    std::vector<double> s_k, lam;
    for (int i : band.entries) {
      const auto est = eigenestimate(battery.entries[i]);
      if (est.excluded) {
        out.excluded_entries.push_back(i);
        continue;
      }
      used.push_back(i);
      s_k.push_back(est.s_hat);
      lam.push_back(est.band_concentration);
    }
    double estimate = 0.0, variance = 0.0;
    int iters = 0;
    if (!used.empty()) {
      double s0 = 0.0;
      for (double s : s_k) s0 += s;
      s0 /= s_k.size();
      double leak = 0.0;
      for (double l : lam) leak += 1.0 - l;
      const double sigma2_broad = s0 * leak;

      double cur = s0;
      std::vector<double> d(s_k.size(), 1.0);
      for (iters = 1; iters <= opts.max_iterations; ++iters) {
        double num = 0.0, den = 0.0;
        for (std::size_t j = 0; j < s_k.size(); ++j) {
          const double dn = lam[j] * cur + (1.0 - lam[j]) * sigma2_broad;
          d[j] = dn > 0.0 ? lam[j] * cur / dn : 1.0;
          num += d[j] * d[j] * lam[j] * s_k[j];
          den += d[j] * d[j] * lam[j];
        }
        const double next = den > 0.0 ? num / den : 0.0;
        const double change =
            std::abs(next - cur) / std::max(std::abs(cur), 1e-300);
        cur = next;
        if (change < opts.tolerance) break;
      }
      if (iters > opts.max_iterations) {
        iters = opts.max_iterations;
        out.converged = false;
      }
      estimate = std::max(cur, 0.0);
      double d2l = 0.0, d4l2 = 0.0;
      for (std::size_t j = 0; j < s_k.size(); ++j) {
        d2l += d[j] * d[j] * lam[j];
        d4l2 += d[j] * d[j] * d[j] * d[j] * lam[j] * lam[j];
        out.weights[used[j]] = d[j];
      }
      // effective chi^2 degrees of freedom 2*(sum d^2 lam)^2 / sum d^4 lam^2
      variance = d2l > 0.0 ? estimate * estimate * d4l2 / (d2l * d2l) : 0.0;
    } else {
      variance = std::numeric_limits<double>::infinity();
    }
    out.grid.push_back(band.center);
    out.values.push_back(estimate);
    out.variances.push_back(variance);
    out.iterations.push_back(iters);
  }
  return out;
}

namespace {
double interp_estimate(const SpectrumEstimate& e, double w) {
  if (e.grid.empty()) return 0.0;
  if (w <= e.grid.front()) return e.values.front();
  if (w >= e.grid.back()) return e.values.back();
  const auto it = std::upper_bound(e.grid.begin(), e.grid.end(), w);
  const std::size_t i = it - e.grid.begin() - 1;
  const double t = (w - e.grid[i]) / (e.grid[i + 1] - e.grid[i]);
  return e.values[i] * (1.0 - t) + e.values[i + 1] * t;
}
}  // namespace

SpectrumEstimate bayesian_estimate(const MeasurementBattery& battery,
                                   const SpectrumEstimate& prior,
                                   const BayesianOptions& opts) {
  if (battery.entries.empty())
    throw std::invalid_argument("bayesian: empty battery");
  if (opts.segments_per_band < 2)
    throw std::invalid_argument("bayesian: need at least 2 segments per band");

  // global segment grid: bands share segments, anchored at the lowest band
  // edge, with width set by the first band
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& e : battery.entries) {
    lo = std::min(lo, e.band_lo);
    hi = std::max(hi, e.band_hi);
  }
  const double band_width =
      battery.entries.front().band_hi - battery.entries.front().band_lo;
  const double h = band_width / opts.segments_per_band;
  const int n_seg = std::max(1, int(std::ceil((hi - lo) / h - 1e-9)));

  double prior_peak = 0.0;
  for (double v : prior.values) prior_peak = std::max(prior_peak, v);
  const double floor =
      opts.prior_floor > 0.0 ? opts.prior_floor : 0.02 * prior_peak;

  std::vector<double> fused_num(n_seg, 0.0), fused_info(n_seg, 0.0);
  std::vector<double> fused_invvar(n_seg, 0.0);
  std::vector<bool> touched(n_seg, false);
  std::vector<int> excluded;

  for (const auto& band : group_by_band(battery)) {
    // segments fully inside this band
    std::vector<int> segs;
    const auto& first = battery.entries[band.entries.front()];
    for (int j = 0; j < n_seg; ++j) {
      const double slo = lo + j * h, shi = slo + h;
      if (slo >= first.band_lo - 1e-9 && shi <= first.band_hi + 1e-9)
        segs.push_back(j);
    }
    std::vector<int> used;
    for (int i : band.entries) {
      const auto& e = battery.entries[i];
      if (e.saturated || e.s_value <= sensitivity_floor()) {
        excluded.push_back(i);
        continue;
      }
      used.push_back(i);
    }
    if (used.empty() || segs.empty()) continue;

    const int nk = static_cast<int>(used.size());
    const int ns = static_cast<int>(segs.size());
    Eigen::MatrixXd A(nk, ns);
    Eigen::VectorXd o(nk), ivar(nk);
    for (int r = 0; r < nk; ++r) {
      const auto& e = battery.entries[used[r]];
      const double s = std::min(e.s_value, 1.0);
      o[r] = -std::log(s);
      const double overlap_std = e.std_err / s;
      ivar[r] = 1.0 / (overlap_std * overlap_std);
      for (int c = 0; c < ns; ++c) {
        const double slo = lo + segs[c] * h;
        A(r, c) = e.filter.band_integral(slo, slo + h) / kPi;
      }
    }
    Eigen::VectorXd p(ns), pvar(ns);
    for (int c = 0; c < ns; ++c) {
      const double sc = lo + segs[c] * h + 0.5 * h;
      p[c] = interp_estimate(prior, sc);
      const double sd = opts.prior_scale * p[c] + floor;
      pvar[c] = std::max(sd * sd, 1e-300);
    }

    Eigen::MatrixXd H = A.transpose() * ivar.asDiagonal() * A;
    for (int c = 0; c < ns; ++c) H(c, c) += 1.0 / pvar[c];
    const Eigen::VectorXd rhs =
        A.transpose() * (ivar.asDiagonal() * o) +
        (p.array() / pvar.array()).matrix();
    const Eigen::LDLT<Eigen::MatrixXd> ldlt(H);
    const Eigen::VectorXd s_map = ldlt.solve(rhs);
    const Eigen::MatrixXd cov =
        ldlt.solve(Eigen::MatrixXd::Identity(ns, ns));

    for (int c = 0; c < ns; ++c) {
      const int j = segs[c];
      double info = 0.0;
      for (int r = 0; r < nk; ++r) info += A(r, c) * A(r, c) * ivar[r];
      const double value = std::max(s_map[c], 0.0);
      fused_num[j] += info * value;
      fused_info[j] += info;
      fused_invvar[j] += 1.0 / std::max(cov(c, c), 1e-300);
      touched[j] = true;
    }
  }

  SpectrumEstimate out;
  out.method = EstimatorKind::bayesian;
  out.converged = true;
  out.excluded_entries = std::move(excluded);
  for (int j = 0; j < n_seg; ++j) {
    if (!touched[j]) continue;
    out.grid.push_back(lo + j * h + 0.5 * h);
    out.values.push_back(fused_info[j] > 0.0 ? fused_num[j] / fused_info[j]
                                             : 0.0);
    out.variances.push_back(fused_invvar[j] > 0.0 ? 1.0 / fused_invvar[j]
                                                  : std::numeric_limits<double>::infinity());
    out.weights.push_back(fused_info[j]);
  }
  return out;
}

BatteryDesign design_battery(double omega_min, double omega_max, int n_centers,
                             const std::vector<int>& orders, double nw,
                             int length) {
  if (n_centers < 2 || omega_max <= omega_min || omega_min <= 0.0)
    throw std::invalid_argument("design_battery: malformed scan range");
  if (orders.empty()) throw std::invalid_argument("design_battery: no orders");
  if (!(nw > 0.0) || length < 4)
    throw std::invalid_argument("design_battery: malformed taper parameters");

  BatteryDesign design;
  design.n_centers = n_centers;
  design.spacing = (omega_max - omega_min) / (n_centers - 1);

  // calibrate the half-FWHM spacing rule on the widest participating order at
  // a reference duration, then scale: every frequency in the filter is
  // proportional to 1/tau
  const int k_max = *std::max_element(orders.begin(), orders.end());
  const double tau_ref = 1.0;
  const double dt_ref = tau_ref / length;
  const auto seq = generate_dpss(
      DpssParams{length, nw / length, dt_ref, k_max});
  const double wb_ref = seq.params.band_edge();
  auto env_ref = envelope_from_sequence_peak(seq, 1.0);
  env_ref = ssb_shift(env_ref, 4.0 * wb_ref, Sideband::upper);
  std::vector<double> grid_ref(2048);
  for (std::size_t i = 0; i < grid_ref.size(); ++i)
    grid_ref[i] = (3.0 + 3.0 * double(i) / (grid_ref.size() - 1)) * wb_ref;
  const double fwhm_ref = amplitude_filter(env_ref, grid_ref).fwhm();
  if (!(fwhm_ref > 0.0))
    throw std::runtime_error("design_battery: degenerate reference filter");

  const double tau = tau_ref * fwhm_ref / (2.0 * design.spacing);
  design.fwhm = 2.0 * design.spacing;
  const double dt = tau / length;
  const double wb = 2.0 * kPi * nw / tau;

  for (int c = 0; c < n_centers; ++c) {
    const double omega_s = omega_min + c * design.spacing;
    for (int k : orders) {
      ProtocolConfig cfg;
      cfg.order = k;
      cfg.nw = nw;
      cfg.length = length;
      cfg.dt = dt;
      cfg.omega_shift = omega_s;
      cfg.band_lo = omega_s;
      cfg.band_hi = omega_s + wb;
      cfg.omega_center = omega_s + 0.5 * wb;
      design.configs.push_back(cfg);
    }
  }
  return design;
}

}  // namespace slepsense
