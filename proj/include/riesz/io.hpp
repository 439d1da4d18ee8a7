#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "json.hpp"
#include "riesz/kernels.hpp"
#include "riesz/lattice.hpp"
#include "riesz/monte_carlo.hpp"
#include "riesz/multiplier.hpp"
#include "riesz/norm_search.hpp"

namespace riesz::io {

using Json = nlohmann::ordered_json;

/// Shortest round-trip decimal form of a double.
std::string fmt(double v);

/// "# config: {...}" line that heads every CSV file.
void write_config_header(std::ostream& os, const Json& config);

/// Nonzero table entries: m_1..m_d, re, im.
void write_kernel_table_csv(std::ostream& os, const KernelTable& t, const Json& config);

/// Every box point: n_1..n_d, re, im.
void write_lattice_csv(std::ostream& os, const LatticeFunction& f, const Json& config);
/// Reads the CSV written above; the box is the smallest centered box that
/// holds every listed point.
LatticeFunction read_lattice_csv(std::istream& is);

/// Dense binary grid: magic "RZLF", u32 version, u32 dim, i32 half[dim],
/// u32 dtype (1 = complex128 little-endian), then the values.
void write_lattice_binary(const std::filesystem::path& file, const LatticeFunction& f);
LatticeFunction read_lattice_binary(const std::filesystem::path& file);

/// xi_1..xi_d, re, im, abs.
void write_multiplier_csv(std::ostream& os, const MultiplierGrid& g, const Json& config);

Json to_json(const KernelSpec& s);
Json to_json(const SupResult& s);
Json to_json(const NormEstimate& e);
Json to_json(const MCReport& r);

}  // namespace riesz::io
