#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "doctest.h"
#include "riesz/errors.hpp"
#include "riesz/io.hpp"

using namespace riesz;

namespace {

LatticeFunction sample(int dim, int h) {
  LatticeFunction f = LatticeFunction::cube(dim, h);
  std::mt19937_64 rng(12);
  std::normal_distribution<double> g;
  for (auto& v : f.values) v = cplx(g(rng), g(rng) * 1e-7);
  return f;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("shortest round-trip formatting") {
    for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) CHECK(std::stod(io::fmt(v)) == v);
    CHECK(io::fmt(0.5) == "0.5");
  }

  TEST_CASE("config header") {
    std::ostringstream os;
    io::write_config_header(os, io::Json{{"R", 10}, {"family", "probabilistic"}});
    CHECK(os.str() == "# config: {\"R\":10,\"family\":\"probabilistic\"}\n");
  }

  TEST_CASE("lattice CSV round trip") {
    const LatticeFunction f = sample(2, 4);
    std::stringstream ss;
    io::write_lattice_csv(ss, f, io::Json{{"seed", 12}});
    const std::string text = ss.str();
    CHECK(text.rfind("# config: ", 0) == 0);
    const LatticeFunction g = io::read_lattice_csv(ss);
    CHECK(g.half == f.half);
    CHECK(g.values == f.values);
    std::istringstream bad("n1,n2,re,im\n1,2,3\n");
    CHECK_THROWS_AS(io::read_lattice_csv(bad), ConfigError);
  }

  TEST_CASE("lattice binary round trip") {
    const auto file = std::filesystem::temp_directory_path() / "riesz_io_test.rzlf";
    const LatticeFunction f = sample(3, 2);
    io::write_lattice_binary(file, f);
    CHECK(std::filesystem::file_size(file) == 4 + 4 + 4 + 3 * 4 + 4 + f.size() * 16);
    {
      std::ifstream in(file, std::ios::binary);
      char magic[4];
      in.read(magic, 4);
      CHECK(std::string(magic, 4) == "RZLF");
    }
    const LatticeFunction g = io::read_lattice_binary(file);
    CHECK(g.dim == 3);
    CHECK(g.half == f.half);
    CHECK(g.values == f.values);
    {
      std::ofstream out(file, std::ios::binary);
      out << "JUNKJUNK";
    }
    CHECK_THROWS_AS(io::read_lattice_binary(file), ConfigError);
    std::filesystem::remove(file);
  }

  TEST_CASE("kernel table and multiplier CSV") {
    const KernelTable t = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 3);
    std::ostringstream os;
    io::write_kernel_table_csv(os, t, io::to_json(t.spec));
    std::istringstream is(os.str());
    std::string line;
    int rows = 0;
    std::getline(is, line);
    CHECK(line.rfind("# config: ", 0) == 0);
    std::getline(is, line);
    CHECK(line == "m1,m2,re,im");
    while (std::getline(is, line)) ++rows;
    int nonzero = 0;
    for (const auto& v : t.values) nonzero += v != cplx{};
    CHECK(rows == nonzero);

    MultiplierOptions opt;
    opt.resolution = 8;
    std::ostringstream ms;
    io::write_multiplier_csv(ms, multiplier_eval(t, opt), io::Json::object());
    std::istringstream mi(ms.str());
    rows = 0;
    while (std::getline(mi, line)) ++rows;
    CHECK(rows == 2 + 64);
  }

  TEST_CASE("JSON records") {
    const auto spec = KernelSpec::beurling_ahlfors(Family::BACorrector);
    const io::Json j = io::to_json(spec);
    CHECK(j.at("family") == "ba_corrector");
    MCReport r;
    r.mean = -1.05;
    r.standard_error = 0.01;
    r.n = 1000;
    r.m = {1, 1};
    r.d = 2;
    r.key = {2, 0};
    const io::Json mj = io::to_json(r);
    CHECK(mj.at("mean").get<double>() == -1.05);
    CHECK(mj.at("n").get<std::uint64_t>() == 1000);
  }
}
