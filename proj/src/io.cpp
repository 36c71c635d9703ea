#include "slepsense/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace slepsense {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_envelope(const std::filesystem::path& path,
                    const ControlEnvelope& env) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "# slepsense envelope v1\n";
  out << "# dt_s = " << format_double(env.dt) << "\n";
  out << "# rabi_max_rad_per_s = " << format_double(env.rabi_max) << "\n";
  out << "# target_area_rad = " << format_double(env.target_area) << "\n";
  out << "# band_halfwidth_rad_per_s = " << format_double(env.band_halfwidth)
      << "\n";
  out << "# columns: sample_re sample_im\n";
  for (const auto& s : env.samples)
    out << format_double(s.real()) << " " << format_double(s.imag()) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

ControlEnvelope read_envelope(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  ControlEnvelope env;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hdr(line.substr(1));
      std::string key, eq;
      double value;
      if (hdr >> key >> eq >> value && eq == "=") {
        if (key == "dt_s") env.dt = value;
        else if (key == "rabi_max_rad_per_s") env.rabi_max = value;
        else if (key == "target_area_rad") env.target_area = value;
        else if (key == "band_halfwidth_rad_per_s") env.band_halfwidth = value;
      }
      continue;
    }
    std::istringstream row(line);
    double re, im;
    if (!(row >> re >> im))
      throw std::runtime_error("malformed envelope row: " + line);
    env.samples.emplace_back(re, im);
  }
  env.validate();
  return env;
}

void write_table(const std::filesystem::path& path,
                 const std::vector<TableColumn>& columns) {
  if (columns.empty()) throw std::invalid_argument("write_table: no columns");
  const std::size_t rows = columns.front().values->size();
  for (const auto& c : columns)
    if (!c.values || c.values->size() != rows)
      throw std::invalid_argument("write_table: ragged columns");
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << "#";
  for (const auto& c : columns) out << " " << c.name;
  out << "\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < columns.size(); ++c)
      out << (c ? " " : "") << format_double((*columns[c].values)[r]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

void write_filter(const std::filesystem::path& path, const FilterFunction& f) {
  write_table(path, {{"omega_rad_per_s", &f.grid}, {"value", &f.values}});
}

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace slepsense
