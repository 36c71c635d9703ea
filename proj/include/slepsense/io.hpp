#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "slepsense/envelope.hpp"
#include "slepsense/filter.hpp"

namespace slepsense {

// Shortest decimal text that round-trips a double bit-exactly.
std::string format_double(double v);

// Envelope file format: '#'-prefixed header lines carrying dt, rabi_max,
// target_area and band_halfwidth, followed by one "re im" row per sample,
// all printed with 17 significant digits.
void write_envelope(const std::filesystem::path& path,
                    const ControlEnvelope& env);
ControlEnvelope read_envelope(const std::filesystem::path& path);

struct TableColumn {
  std::string name;  // header token, units included (e.g. omega_rad_per_s)
  const std::vector<double>* values = nullptr;
};

// Delimited text table with a '# name1 name2 ...' header comment line.
void write_table(const std::filesystem::path& path,
                 const std::vector<TableColumn>& columns);

void write_filter(const std::filesystem::path& path, const FilterFunction& f);

// FNV-1a, for stable config fingerprints in run manifests.
std::uint64_t fnv1a(const std::string& data);

}  // namespace slepsense
