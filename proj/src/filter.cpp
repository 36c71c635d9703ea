#include "slepsense/filter.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "slepsense/simulator.hpp"

namespace slepsense {

namespace {
constexpr double kPi = std::numbers::pi;

void check_grid(const std::vector<double>& grid) {
  if (grid.size() < 2) throw std::invalid_argument("filter: grid too small");
  if (grid.front() < 0.0)
    throw std::invalid_argument("filter: grid must be nonnegative");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1]))
      throw std::invalid_argument("filter: grid must be strictly increasing");
}

double interp(const std::vector<double>& x, const std::vector<double>& y,
              double w) {
  const int m = static_cast<int>(x.size());
  const int i = std::clamp(
      int(std::upper_bound(x.begin(), x.end(), w) - x.begin()) - 1, 0, m - 2);
  const double t = (w - x[i]) / (x[i + 1] - x[i]);
  return y[i] * (1.0 - t) + y[i + 1] * t;
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y,
                 double lo, double hi) {
  lo = std::max(lo, x.front());
  hi = std::min(hi, x.back());
  if (!(hi > lo)) return 0.0;
  const int m = static_cast<int>(x.size());
  const int first =
      static_cast<int>(std::lower_bound(x.begin(), x.end(), lo) - x.begin());
  const int last =
      static_cast<int>(std::upper_bound(x.begin(), x.end(), hi) - x.begin()) - 1;
  if (last < first)
    return 0.5 * (interp(x, y, lo) + interp(x, y, hi)) * (hi - lo);
  double acc = 0.5 * (interp(x, y, lo) + y[first]) * (x[first] - lo);
  for (int i = first; i < last; ++i)
    acc += 0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]);
  acc += 0.5 * (y[last] + interp(x, y, hi)) * (hi - x[last]);
  return acc;
}

// drive rates Omega_n = rabi_max * samples[n]
std::vector<std::complex<double>> drive_rates(const ControlEnvelope& env) {
  std::vector<std::complex<double>> om(env.samples.size());
  for (std::size_t n = 0; n < om.size(); ++n)
    om[n] = env.rabi_max * env.samples[n];
  return om;
}
}  // namespace

void FilterFunction::validate() const {
  if (grid.size() != values.size() || grid.size() < 2)
    throw std::invalid_argument("filter: malformed table");
  check_grid(grid);
  for (double v : values)
    if (v < 0.0) throw std::invalid_argument("filter: negative value");
}

double FilterFunction::fwhm() const {
  const double peak = *std::max_element(values.begin(), values.end());
  if (!(peak > 0.0)) return 0.0;
  const double half = 0.5 * peak;
  const int m = static_cast<int>(values.size());
  int first = 0;
  while (first < m && values[first] < half) ++first;
  int last = m - 1;
  while (last >= 0 && values[last] < half) --last;
  if (first > last) return 0.0;
  double lo = grid[first];
  if (first > 0) {
    const double t = (half - values[first - 1]) / (values[first] - values[first - 1]);
    lo = grid[first - 1] + t * (grid[first] - grid[first - 1]);
  }
  double hi = grid[last];
  if (last < m - 1) {
    const double t = (half - values[last + 1]) / (values[last] - values[last + 1]);
    hi = grid[last + 1] - t * (grid[last + 1] - grid[last]);
  }
  return hi - lo;
}

double FilterFunction::band_integral(double omega_lo, double omega_hi) const {
  return trapezoid(grid, values, omega_lo, omega_hi);
}

FilterFunction amplitude_filter(const ControlEnvelope& env,
                                const std::vector<double>& grid) {
  env.validate();
  check_grid(grid);
  const auto om = drive_rates(env);
  const double dt = env.dt;
  FilterFunction f;
  f.grid = grid;
  f.values.resize(grid.size());
  f.quadrature = Quadrature::amplitude;
  f.norm_convention = "F=|dt*sum Omega_n e^{-i w n dt}|^2; overlap=(1/pi)int F*S";
  for (std::size_t g = 0; g < grid.size(); ++g) {
    std::complex<double> acc = 0.0;
    for (std::size_t n = 0; n < om.size(); ++n)
      acc += om[n] * std::polar(1.0, -grid[g] * double(n) * dt);
    f.values[g] = std::norm(acc * dt);
  }
  double power = 0.0;
  for (const auto& o : om) power += std::norm(o);
  // Parseval: the two-sided integral over [-pi/dt, pi/dt] is 2*pi*dt^2*power
  f.total_integral = kPi * dt * dt * power;
  return f;
}

FilterFunction dephasing_filter(const ControlEnvelope& env,
                                const std::vector<double>& grid) {
  env.validate();
  check_grid(grid);
  const int n = env.size();
  std::vector<double> rate(n), theta(n);  // theta_n at segment start
  double acc = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    if (std::abs(env.samples[i].imag()) > 1e-9)
      throw std::invalid_argument("dephasing_filter: x-quadrature envelopes only");
    rate[i] = env.rabi_max * env.samples[i].real();
    theta[i] = acc;
    acc += rate[i] * env.dt;
    scale = std::max(scale, std::abs(rate[i]));
  }
  const double dt = env.dt;

  // G(w) = sum_n e^{i theta_n} e^{-i w n dt} * (e^{i(rate_n - w)dt}-1)/(i(rate_n - w))
  auto G = [&](double w) {
    std::complex<double> g = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rate[i] - w;
      std::complex<double> seg;
      if (std::abs(x * dt) < 1e-8) {
        seg = {dt, 0.5 * x * dt * dt};  // first-order expansion near x = 0
      } else {
        seg = (std::polar(1.0, x * dt) - 1.0) / std::complex<double>(0.0, x);
      }
      g += std::polar(1.0, theta[i] - w * i * dt) * seg;
    }
    return g;
  };

  FilterFunction f;
  f.grid = grid;
  f.values.resize(grid.size());
  f.quadrature = Quadrature::dephasing;
  f.norm_convention = "F=(|G(w)|^2+|G(-w)|^2)/2, toggling-frame z trajectory";
  for (std::size_t g = 0; g < grid.size(); ++g)
    f.values[g] = 0.5 * (std::norm(G(grid[g])) + std::norm(G(-grid[g])));
  f.total_integral = kPi * env.duration();
  return f;
}

double sensitivity_floor() { return 0.005; }

FidelityPrediction predict_fidelity(const std::vector<FilterFunction>& filters,
                                    const std::vector<PsdModel>& psds) {
  if (filters.size() != psds.size())
    throw std::invalid_argument("predict_fidelity: filters and PSDs must pair up");
  FidelityPrediction pred;
  for (std::size_t i = 0; i < filters.size(); ++i) {
    const auto& f = filters[i];
    const auto& s = psds[i];
    f.validate();
    s.validate();
    if (f.quadrature != s.quadrature)
      throw std::invalid_argument("predict_fidelity: quadrature mismatch");
    double overlap = 0.0;
    if (s.kind == PsdKind::single_line) {
      if (s.line_omega < f.grid.front() || s.line_omega > f.grid.back())
        throw std::invalid_argument("predict_fidelity: line outside filter grid");
      overlap = interp(f.grid, f.values, s.line_omega) * s.line_power / kPi;
    } else {
      if (s.kind == PsdKind::tabulated && s.grid != f.grid)
        throw std::invalid_argument("predict_fidelity: PSD/filter grid mismatch");
      std::vector<double> fs(f.grid.size());
      for (std::size_t g = 0; g < f.grid.size(); ++g)
        fs[g] = f.values[g] * s.density(f.grid[g]);
      overlap = trapezoid(f.grid, fs, f.grid.front(), f.grid.back()) / kPi;
    }
    if (s.quadrature == Quadrature::amplitude)
      pred.overlap_amplitude += overlap;
    else
      pred.overlap_dephasing += overlap;
  }
  pred.overlap = pred.overlap_amplitude + pred.overlap_dephasing;
  pred.f_av = std::exp(-pred.overlap);
  return pred;
}

FilterFunction SidScan::to_filter() const {
  FilterFunction f;
  f.quadrature = Quadrature::amplitude;
  f.norm_convention = "sid-reconstruction";
  for (const auto& p : points) {
    f.grid.push_back(p.omega);
    f.values.push_back(p.filter_estimate);
  }
  return f;
}

SidScan reconstruct_filter_by_sid(const ControlEnvelope& env, double alpha,
                                  const std::vector<double>& omega_grid,
                                  int phases, SidBackend backend) {
  env.validate();
  if (!(alpha > 0.0) || alpha >= 1.0)
    throw std::invalid_argument("sid scan: alpha must lie in (0, 1)");
  if (phases < 2) throw std::invalid_argument("sid scan: need at least 2 phases");

  // reference evolution of the unmodulated protocol
  const QubitState prep = QubitState::along(Axis::z);
  const NoiseTrajectory none;
  const QubitState ideal = evolve(prep, env, none, none);

  SidScan scan;
  scan.points.reserve(omega_grid.size());
  for (double w : omega_grid) {
    double fid_sum = 0.0;
    for (int j = 0; j < phases; ++j) {
      const double phi = 2.0 * kPi * j / phases;
      const auto mod = apply_sid_modulation(env, SidParams{alpha, w, phi});
      double fid;
      if (backend == SidBackend::simulated) {
        const QubitState out = evolve(prep, mod, none, none);
        fid = 0.5 * (1.0 + out.bloch[0] * ideal.bloch[0] +
                     out.bloch[1] * ideal.bloch[1] +
                     out.bloch[2] * ideal.bloch[2]);
      } else {
        // exact first-order rotation-angle error of the x-quadrature drive
        std::complex<double> c = 0.0;
        for (int n = 0; n < env.size(); ++n)
          c += env.rabi_max * env.samples[n].real() *
               std::polar(1.0, w * n * env.dt);
        const double dth = alpha * (std::cos(phi) * c.real() -
                                    std::sin(phi) * c.imag()) * env.dt;
        fid = 0.5 * (1.0 + std::cos(dth));
      }
      fid_sum += fid;
    }
    SidScanPoint pt;
    pt.omega = w;
    pt.mean_infidelity = 1.0 - fid_sum / phases;
    if (pt.mean_infidelity < sensitivity_floor()) {
      pt.at_floor = true;
      pt.filter_estimate =
          -8.0 * std::log(1.0 - sensitivity_floor()) / (alpha * alpha);
    } else {
      pt.filter_estimate =
          -8.0 * std::log(1.0 - pt.mean_infidelity) / (alpha * alpha);
    }
    scan.points.push_back(pt);
  }
  return scan;
}

}  // namespace slepsense
