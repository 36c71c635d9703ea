#include "slepsense/psd.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slepsense {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::string to_string(Quadrature q) {
  return q == Quadrature::amplitude ? "amplitude" : "dephasing";
}

double psd_variance_factor() { return 4.0; }

PsdModel PsdModel::white(double level, Quadrature q, double cutoff) {
  PsdModel m;
  m.kind = PsdKind::white;
  m.quadrature = q;
  m.level = level;
  m.cutoff = cutoff;
  m.validate();
  return m;
}

PsdModel PsdModel::comb(std::vector<CombTooth> teeth, Quadrature q) {
  PsdModel m;
  m.kind = PsdKind::comb;
  m.quadrature = q;
  m.teeth = std::move(teeth);
  std::sort(m.teeth.begin(), m.teeth.end(),
            [](const CombTooth& a, const CombTooth& b) {
              return a.omega_lo < b.omega_lo;
            });
  double hi = 0.0;
  for (const auto& t : m.teeth) hi = std::max(hi, t.omega_hi);
  m.cutoff = hi;
  m.validate();
  return m;
}

PsdModel PsdModel::single_line(double omega, double integrated_power,
                               Quadrature q) {
  PsdModel m;
  m.kind = PsdKind::single_line;
  m.quadrature = q;
  m.line_omega = omega;
  m.line_power = integrated_power;
  m.cutoff = omega;
  m.validate();
  return m;
}

PsdModel PsdModel::tabulated(std::vector<double> grid,
                             std::vector<double> values, Quadrature q) {
  PsdModel m;
  m.kind = PsdKind::tabulated;
  m.quadrature = q;
  m.grid = std::move(grid);
  m.values = std::move(values);
  m.cutoff = m.grid.empty() ? 0.0 : m.grid.back();
  m.validate();
  return m;
}

void PsdModel::validate() const {
  switch (kind) {
    case PsdKind::white:
      if (level < 0.0) throw std::invalid_argument("psd: negative level");
      break;
    case PsdKind::comb:
      for (std::size_t i = 0; i < teeth.size(); ++i) {
        if (teeth[i].height < 0.0)
          throw std::invalid_argument("psd: negative tooth height");
        if (!(teeth[i].omega_hi > teeth[i].omega_lo) || teeth[i].omega_lo < 0.0)
          throw std::invalid_argument("psd: malformed tooth");
        if (i > 0 && teeth[i].omega_lo < teeth[i - 1].omega_hi - 1e-12)
          throw std::invalid_argument("psd: overlapping teeth");
      }
      break;
    case PsdKind::single_line:
      if (line_omega < 0.0 || line_power < 0.0)
        throw std::invalid_argument("psd: malformed line");
      break;
    case PsdKind::tabulated:
      if (grid.size() != values.size() || grid.size() < 2)
        throw std::invalid_argument("psd: malformed table");
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (values[i] < 0.0) throw std::invalid_argument("psd: negative value");
        if (grid[i] < 0.0 || (i > 0 && !(grid[i] > grid[i - 1])))
          throw std::invalid_argument("psd: grid must be increasing, >= 0");
      }
      break;
  }
}

double PsdModel::density(double omega) const {
  if (omega < 0.0 || omega > cutoff) return 0.0;
  switch (kind) {
    case PsdKind::white:
      return level;
    case PsdKind::comb:
      for (const auto& t : teeth)
        if (omega >= t.omega_lo && omega <= t.omega_hi) return t.height;
      return 0.0;
    case PsdKind::single_line:
      return 0.0;
    case PsdKind::tabulated: {
      if (omega <= grid.front()) return omega < grid.front() ? 0.0 : values.front();
      if (omega >= grid.back()) return omega > grid.back() ? 0.0 : values.back();
      const auto it = std::upper_bound(grid.begin(), grid.end(), omega);
      const std::size_t i = it - grid.begin() - 1;
      const double t = (omega - grid[i]) / (grid[i + 1] - grid[i]);
      return values[i] * (1.0 - t) + values[i + 1] * t;
    }
  }
  return 0.0;
}

double PsdModel::support_max() const {
  switch (kind) {
    case PsdKind::white:
      return level > 0.0 ? cutoff : 0.0;
    case PsdKind::comb: {
      double hi = 0.0;
      for (const auto& t : teeth)
        if (t.height > 0.0) hi = std::max(hi, t.omega_hi);
      return hi;
    }
    case PsdKind::single_line:
      return line_power > 0.0 ? line_omega : 0.0;
    case PsdKind::tabulated: {
      double hi = 0.0;
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (values[i] > 0.0) hi = std::max(hi, grid[i]);
      return hi;
    }
  }
  return 0.0;
}

double PsdModel::integral() const {
  switch (kind) {
    case PsdKind::white:
      if (!std::isfinite(cutoff) && level > 0.0)
        throw std::invalid_argument("psd: white integral needs a cutoff");
      return level > 0.0 ? level * cutoff : 0.0;
    case PsdKind::comb: {
      double acc = 0.0;
      for (const auto& t : teeth) acc += t.height * (t.omega_hi - t.omega_lo);
      return acc;
    }
    case PsdKind::single_line:
      return line_power;
    case PsdKind::tabulated: {
      double acc = 0.0;
      for (std::size_t i = 1; i < grid.size(); ++i)
        acc += 0.5 * (values[i] + values[i - 1]) * (grid[i] - grid[i - 1]);
      return acc;
    }
  }
  return 0.0;
}

double PsdModel::variance() const {
  return psd_variance_factor() / kPi * integral();
}

}  // namespace slepsense
