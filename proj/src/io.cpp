#include "riesz/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "riesz/errors.hpp"

namespace riesz::io {
namespace {

constexpr char kMagic[4] = {'R', 'Z', 'L', 'F'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kComplex128 = 1;

Json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

template <class T>
void put(std::ostream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw ConfigError("truncated binary lattice file");
  return v;
}

}  // namespace

std::string fmt(double v) {
  char buf[64];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

void write_config_header(std::ostream& os, const Json& config) {
  os << "# config: " << config.dump() << '\n';
}

void write_kernel_table_csv(std::ostream& os, const KernelTable& t, const Json& config) {
  write_config_header(os, config);
  for (int a = 1; a <= t.dim(); ++a) os << 'm' << a << ',';
  os << "re,im\n";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    if (t.values[i] == cplx{}) continue;
    for (int v : t.point(i)) os << v << ',';
    os << fmt(t.values[i].real()) << ',' << fmt(t.values[i].imag()) << '\n';
  }
}

void write_lattice_csv(std::ostream& os, const LatticeFunction& f, const Json& config) {
  write_config_header(os, config);
  for (int a = 1; a <= f.dim; ++a) os << 'n' << a << ',';
  os << "re,im\n";
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (int v : f.point(i)) os << v << ',';
    os << fmt(f.values[i].real()) << ',' << fmt(f.values[i].imag()) << '\n';
  }
}

LatticeFunction read_lattice_csv(std::istream& is) {
  std::string line;
  std::vector<std::pair<std::vector<int>, cplx>> rows;
  int dim = -1;
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (line[0] == 'n') {  // column header
      dim = static_cast<int>(std::count(line.begin(), line.end(), ',')) - 1;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (dim < 0) dim = static_cast<int>(cells.size()) - 2;
    if (static_cast<int>(cells.size()) != dim + 2 || dim < 1)
      throw ConfigError("malformed lattice CSV row: " + line);
    std::vector<int> n(static_cast<std::size_t>(dim));
    for (int a = 0; a < dim; ++a) n[a] = std::stoi(cells[a]);
    rows.emplace_back(std::move(n), cplx(std::stod(cells[dim]), std::stod(cells[dim + 1])));
  }
  if (dim < 1) throw ConfigError("lattice CSV has no data");
  std::vector<int> half(static_cast<std::size_t>(dim), 0);
  for (const auto& [n, v] : rows)
    for (int a = 0; a < dim; ++a) half[a] = std::max(half[a], std::abs(n[a]));
  LatticeFunction f = LatticeFunction::zeros(half);
  for (const auto& [n, v] : rows) f.values[f.index(n)] = v;
  return f;
}

void write_lattice_binary(const std::filesystem::path& file, const LatticeFunction& f) {
  std::ofstream os(file, std::ios::binary);
  if (!os) throw ConfigError("cannot open " + file.string());
  os.write(kMagic, 4);
  put<std::uint32_t>(os, kVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(f.dim));
  for (int h : f.half) put<std::int32_t>(os, h);
  put<std::uint32_t>(os, kComplex128);
  for (const auto& v : f.values) {
    put<double>(os, v.real());
    put<double>(os, v.imag());
  }
}

LatticeFunction read_lattice_binary(const std::filesystem::path& file) {
  std::ifstream is(file, std::ios::binary);
  if (!is) throw ConfigError("cannot open " + file.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, kMagic, 4) != 0) throw ConfigError("not a lattice grid file");
  if (get<std::uint32_t>(is) != kVersion) throw ConfigError("unsupported lattice file version");
  const auto dim = get<std::uint32_t>(is);
  if (dim < 1 || dim > 16) throw ConfigError("bad dimension in lattice file");
  std::vector<int> half(dim);
  for (auto& h : half) h = get<std::int32_t>(is);
  if (get<std::uint32_t>(is) != kComplex128) throw ConfigError("unsupported lattice dtype");
  LatticeFunction f = LatticeFunction::zeros(half);
  for (auto& v : f.values) {
    const double re = get<double>(is);
    const double im = get<double>(is);
    v = cplx(re, im);
  }
  return f;
}

void write_multiplier_csv(std::ostream& os, const MultiplierGrid& g, const Json& config) {
  write_config_header(os, config);
  for (int a = 1; a <= g.dim; ++a) os << "xi" << a << ',';
  os << "re,im,abs\n";
  for (std::size_t i = 0; i < g.values.size(); ++i) {
    for (double x : g.xi(i)) os << fmt(x) << ',';
    os << fmt(g.values[i].real()) << ',' << fmt(g.values[i].imag()) << ','
       << fmt(std::abs(g.values[i])) << '\n';
  }
}

Json to_json(const KernelSpec& s) {
  Json j;
  j["family"] = to_string(s.family);
  j["d"] = s.dim;
  Json terms = Json::array();
  for (const auto& t : s.terms)
    terms.push_back({{"coef_re", t.coef.real()}, {"coef_im", t.coef.imag()}, {"j", t.j}, {"k", t.k}});
  j["terms"] = terms;
  j["description"] = s.describe();
  return j;
}

Json to_json(const SupResult& s) {
  return Json{{"grid_max", s.grid_max}, {"sup", s.value}, {"argmax", s.argmax}};
}

Json to_json(const NormEstimate& e) {
  return Json{{"spec", e.spec},         {"p", e.p},
              {"box_half_width", e.half_width}, {"R", e.radius},
              {"value", json_number(e.value)}, {"iterations", e.iterations},
              {"seed", e.seed},         {"converged", e.converged},
              {"start", e.start}};
}

Json to_json(const MCReport& r) {
  return Json{{"m", r.m},
              {"d", r.d},
              {"r2", r.key.r2},
              {"e", r.key.e},
              {"n", r.n},
              {"seed", r.seed},
              {"mean", r.mean},
              {"stderr", r.standard_error}};
}

}  // namespace riesz::io
