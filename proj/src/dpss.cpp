#include "slepsense/dpss.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace slepsense {

namespace {
constexpr double kPi = std::numbers::pi;

// sinc concentration kernel row: kern[0] = 2W, kern[j] = sin(2 pi W j)/(pi j)
std::vector<double> sinc_kernel_row(int n, double w) {
  std::vector<double> kern(n);
  kern[0] = 2.0 * w;
  for (int j = 1; j < n; ++j) kern[j] = std::sin(2.0 * kPi * w * j) / (kPi * j);
  return kern;
}

double rayleigh_concentration(const std::vector<double>& v, double w) {
  const int n = static_cast<int>(v.size());
  const auto kern = sinc_kernel_row(n, w);
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += kern[std::abs(i - j)] * v[j];
    acc += row * v[i];
  }
  return std::clamp(acc, 0.0, 1.0);
}

void fix_sign(std::vector<double>& v, int order) {
  const int n = static_cast<int>(v.size());
  double ref = 0.0;
  if (order % 2 == 0) {
    for (double x : v) ref += x;
  } else {
    double peak = 0.0;
    for (double x : v) peak = std::max(peak, std::abs(x));
    for (double x : v) {
      if (std::abs(x) > 1e-12 * peak) {
        ref = x;
        break;
      }
    }
  }
  if (ref < 0.0)
    for (int i = 0; i < n; ++i) v[i] = -v[i];
}

// Projects onto the exact parity class of the order and renormalizes; the
// tridiagonal eigenvectors have definite parity up to rounding.
void symmetrize(std::vector<double>& v, int order) {
  const int n = static_cast<int>(v.size());
  const double s = (order % 2 == 0) ? 1.0 : -1.0;
  for (int i = 0; i < n / 2; ++i) {
    const double a = 0.5 * (v[i] + s * v[n - 1 - i]);
    v[i] = a;
    v[n - 1 - i] = s * a;
  }
  if (n % 2 == 1 && order % 2 == 1) v[n / 2] = 0.0;
  double norm = 0.0;
  for (double x : v) norm += x * x;
  norm = std::sqrt(norm);
  if (norm < 0.1) throw std::runtime_error("dpss: parity projection collapsed");
  for (double& x : v) x /= norm;
}
}  // namespace

double DpssParams::band_edge() const { return 2.0 * kPi * half_bandwidth / dt; }

double DpssParams::duration() const { return length * dt; }

void DpssParams::validate() const {
  if (length < 1) throw std::invalid_argument("dpss: length must be positive");
  if (!(half_bandwidth > 0.0) || half_bandwidth > 0.5)
    throw std::invalid_argument("dpss: half-bandwidth must lie in (0, 1/2]");
  if (!(dt > 0.0)) throw std::invalid_argument("dpss: dt must be positive");
  if (order < 0 || order >= length)
    throw std::invalid_argument("dpss: order must lie in {0..N-1}");
}

std::vector<DpssSequence> generate_dpss_orders(int length, double half_bandwidth,
                                               double dt,
                                               const std::vector<int>& orders) {
  for (int k : orders) DpssParams{length, half_bandwidth, dt, k}.validate();
  if (orders.empty()) return {};

  const int n = length;
  Eigen::VectorXd diag(n), subdiag(std::max(n - 1, 0));
  const double c = std::cos(2.0 * kPi * half_bandwidth);
  for (int i = 0; i < n; ++i) {
    const double h = 0.5 * (n - 1 - 2.0 * i);
    diag[i] = h * h * c;
  }
  for (int i = 1; i < n; ++i) subdiag[i - 1] = 0.5 * i * (n - i);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("dpss: tridiagonal eigensolve failed");

  std::vector<DpssSequence> out;
  out.reserve(orders.size());
  for (int k : orders) {
    // eigenvalues ascend; order k pairs with the (N-1-k)-th column
    Eigen::VectorXd col = solver.eigenvectors().col(n - 1 - k);
    std::vector<double> v(col.data(), col.data() + n);
    symmetrize(v, k);
    fix_sign(v, k);
    DpssSequence seq;
    seq.params = DpssParams{length, half_bandwidth, dt, k};
    seq.values = std::move(v);
    seq.concentration = rayleigh_concentration(seq.values, half_bandwidth);
    out.push_back(std::move(seq));
  }
  return out;
}

DpssSequence generate_dpss(const DpssParams& params) {
  params.validate();
  return generate_dpss_orders(params.length, params.half_bandwidth, params.dt,
                              {params.order})[0];
}

Wavefunction sequence_wavefunction(const std::vector<double>& values, double dt,
                                   int grid_size) {
  const int n = static_cast<int>(values.size());
  if (n < 1) throw std::invalid_argument("wavefunction: empty sequence");
  if (!(dt > 0.0)) throw std::invalid_argument("wavefunction: dt must be positive");
  if (grid_size < 2) throw std::invalid_argument("wavefunction: grid too small");

  // definite parity about the center selects the real or imaginary part of
  // the phase-centered transform; otherwise fall back to the magnitude
  double even_resid = 0.0, odd_resid = 0.0, scale = 0.0;
  for (int i = 0; i < n; ++i) {
    even_resid += std::abs(values[i] - values[n - 1 - i]);
    odd_resid += std::abs(values[i] + values[n - 1 - i]);
    scale += std::abs(values[i]);
  }
  const double tol = 1e-9 * std::max(scale, 1e-300);
  const int parity = even_resid <= tol ? 0 : (odd_resid <= tol ? 1 : -1);

  Wavefunction wf;
  wf.grid.resize(grid_size);
  wf.values.resize(grid_size);
  const double omega_max = kPi / dt;
  const double center = 0.5 * (n - 1);
  for (int g = 0; g < grid_size; ++g) {
    const double omega = -omega_max + 2.0 * omega_max * g / (grid_size - 1);
    std::complex<double> acc = 0.0;
    for (int m = 0; m < n; ++m)
      acc += values[m] * std::polar(1.0, -omega * (m - center) * dt);
    wf.grid[g] = omega;
    wf.values[g] = parity == 0   ? acc.real()
                   : parity == 1 ? acc.imag()
                                 : std::abs(acc);
  }
  return wf;
}

Wavefunction dpswf(const DpssSequence& seq, int grid_size) {
  seq.params.validate();
  if (grid_size < 2 * seq.params.length)
    throw std::invalid_argument("dpswf: grid_size must be at least 2N");
  return sequence_wavefunction(seq.values, seq.params.dt, grid_size);
}

namespace {
// trapezoid of values^2 over [lo, hi], linear interpolation of the squared
// integrand at the interval ends
double integrate_squared(const Wavefunction& wf, double lo, double hi) {
  const auto& x = wf.grid;
  const int m = static_cast<int>(x.size());
  if (m < 2) throw std::invalid_argument("quadrature: grid too small");
  for (int i = 1; i < m; ++i)
    if (!(x[i] > x[i - 1]))
      throw std::invalid_argument("quadrature: grid must be increasing");
  lo = std::max(lo, x.front());
  hi = std::min(hi, x.back());
  if (!(hi > lo)) return 0.0;

  auto sq = [&](int i) { return wf.values[i] * wf.values[i]; };
  auto interp = [&](double w) {
    const int i =
        std::clamp(int(std::upper_bound(x.begin(), x.end(), w) - x.begin()) - 1,
                   0, m - 2);
    const double t = (w - x[i]) / (x[i + 1] - x[i]);
    return sq(i) * (1.0 - t) + sq(i + 1) * t;
  };

  const int first = static_cast<int>(
      std::lower_bound(x.begin(), x.end(), lo) - x.begin());
  int last = static_cast<int>(
      std::upper_bound(x.begin(), x.end(), hi) - x.begin()) - 1;
  double acc = 0.0;
  if (last < first) {  // both ends inside one cell
    return 0.5 * (interp(lo) + interp(hi)) * (hi - lo);
  }
  acc += 0.5 * (interp(lo) + sq(first)) * (x[first] - lo);
  for (int i = first; i < last; ++i)
    acc += 0.5 * (sq(i) + sq(i + 1)) * (x[i + 1] - x[i]);
  acc += 0.5 * (sq(last) + interp(hi)) * (hi - x[last]);
  return acc;
}
}  // namespace

double spectral_concentration(const Wavefunction& wf, double omega_b) {
  if (wf.grid.empty() || wf.grid.size() != wf.values.size())
    throw std::invalid_argument("spectral_concentration: malformed wavefunction");
  const double total = integrate_squared(wf, wf.grid.front(), wf.grid.back());
  if (!(total > 0.0)) return 0.0;
  const double band = integrate_squared(wf, -omega_b, omega_b);
  return std::clamp(band / total, 0.0, 1.0);
}

double leakage_ratio_db(const Wavefunction& dpss_wf, const Wavefunction& flat_wf,
                        double omega_b) {
  auto positive_fraction = [omega_b](const Wavefunction& wf) {
    const double total = integrate_squared(wf, 0.0, wf.grid.back());
    if (!(total > 0.0))
      throw std::invalid_argument("leakage_ratio: zero positive-axis power");
    return integrate_squared(wf, 0.0, omega_b) / total;
  };
  const double c_dpss = positive_fraction(dpss_wf);
  const double c_flat = positive_fraction(flat_wf);
  const double leak_dpss = 1.0 - c_dpss;
  if (!(leak_dpss > 0.0))
    throw std::runtime_error("leakage_ratio: reference has no out-of-band power");
  return 10.0 * std::log10((1.0 - c_flat) / leak_dpss);
}

}  // namespace slepsense
