#include <algorithm>
#include <cmath>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "riesz/errors.hpp"
#include "riesz/u_function.hpp"

using namespace riesz;

namespace {

std::vector<std::vector<int>> sample_points(int d, int r) {
  std::vector<std::vector<int>> out;
  std::vector<int> m(d, -r);
  for (;;) {
    int r2 = 0;
    for (int v : m) r2 += v * v;
    if (r2 > 0 && r2 <= r * r) out.push_back(m);
    int a = d - 1;
    while (a >= 0 && m[a] == r) m[a--] = -r;
    if (a < 0) break;
    ++m[a];
  }
  return out;
}

}  // namespace

TEST_SUITE("u_function") {
  TEST_CASE("class keys") {
    const std::vector<int> m{1, 2};
    CHECK(even_count(m) == 1);
    CHECK(u_key(m) == UKey{5, 1});
    const std::vector<int> z{0, 0, 4};
    CHECK(u_key(z) == UKey{16, 3});
    // Signs and permutations preserve the key.
    const std::vector<int> a{3, -2, 1}, b{-1, 2, 3}, c{2, 1, -3};
    CHECK(u_key(a) == u_key(b));
    CHECK(u_key(a) == u_key(c));
  }

  TEST_CASE("U is invariant under the hyperoctahedral group") {
    const std::vector<int> a{2, -1}, b{-1, 2}, c{1, 2}, d{-2, -1};
    const double u = u_value(a);
    CHECK(u_value(b) == u);
    CHECK(u_value(c) == u);
    CHECK(u_value(d) == u);
    const std::vector<int> e{1, 0, 2}, f{0, -2, 1};
    CHECK(u_value(e) == u_value(f));
    // Same |m|^2 = 25 and same parity count: (5,0) and (3,4) share a class.
    const std::vector<int> g{5, 0}, h{3, 4};
    CHECK(u_value(g) == u_value(h));
  }

  TEST_CASE("parity reduction agrees with the direct heat-kernel integral") {
    for (int d : {2, 3}) {
      for (const auto& m : sample_points(d, d == 2 ? 4 : 2)) {
        const double q = u_plus_one_quadrature(d, u_key(m));
        std::vector<double> x(m.begin(), m.end());
        const double direct = u_plus_one_direct(x);
        CHECK(std::abs(q - direct) <= 1e-10);
      }
    }
  }

  TEST_CASE("Gauss-Laguerre cross-check") {
    for (int d : {2, 3, 4}) {
      for (const auto& m : sample_points(d, 2)) {
        const UKey k = u_key(m);
        CHECK(std::abs(u_plus_one_laguerre(d, k) - u_plus_one_quadrature(d, k)) <= 1e-6);
      }
    }
    // Away from the smallest classes the rule is much sharper.
    CHECK(std::abs(u_plus_one_laguerre(2, {5, 1}) - u_plus_one_quadrature(2, {5, 1})) <= 1e-9);
  }

  TEST_CASE("U is negative and U + 1 decays super-polynomially") {
    for (const auto& m : sample_points(2, 6)) CHECK(u_value(m) < 0.0);
    for (const auto& m : sample_points(3, 3)) CHECK(u_value(m) < 0.0);
    CHECK(std::abs(u_plus_one(2, {25, 1})) < 1e-9);
    CHECK(std::abs(u_plus_one(2, {100, 2})) < 1e-18);
    CHECK(std::abs(u_plus_one(2, {1600, 2})) < 1e-60);
    CHECK(std::abs(u_plus_one(2, {100, 2})) < std::abs(u_plus_one(2, {25, 1})));
  }

  TEST_CASE("direct form off the lattice is continuous") {
    const std::vector<double> p{1.0, 0.0}, q{1.0 + 1e-6, 0.0};
    CHECK(u_value_direct_real(q) == doctest::Approx(u_value_direct_real(p)).epsilon(1e-4));
    const std::vector<int> m{2, 1};
    const std::vector<double> x{2.0, 1.0};
    CHECK(u_value_direct_real(x) == doctest::Approx(u_value(m)).epsilon(1e-12));
    CHECK(u_value_direct(m) == doctest::Approx(u_value(m)).epsilon(1e-12));
  }

  TEST_CASE("memo and cache file round trip") {
    auto& cache = UCache::instance();
    const auto dir = std::filesystem::temp_directory_path() / "riesz_ucache_test";
    std::filesystem::remove_all(dir);
    const auto file = dir / kUCacheFileName;
    const double a = u_plus_one(2, {13, 1});
    const double b = u_plus_one(3, {6, 1});
    CHECK(cache.size() >= 2);
    CHECK(cache.save(file) >= 2);
    CHECK(cache.save(file) == 0);  // append-only, nothing new
    cache.clear();
    CHECK(cache.size() == 0);
    CHECK(cache.load(file) >= 2);
    double v = 0.0;
    CHECK(cache.lookup(2, {13, 1}, UOptions{}.eps, v));
    CHECK(v == a);
    CHECK(cache.lookup(3, {6, 1}, UOptions{}.eps, v));
    CHECK(v == b);
    CHECK(cache.load(dir / "missing.txt") == 0);
    std::filesystem::remove_all(dir);
  }

  TEST_CASE("invalid classes") {
    CHECK_THROWS_AS(u_value(2, UKey{0, 2}), ConfigError);
    CHECK_THROWS_AS(u_value(2, UKey{1, 3}), ConfigError);
    CHECK_THROWS_AS(u_value(2, UKey{1, 2}), ConfigError);  // both coordinates even, |m|^2 = 1
    CHECK_THROWS_AS(u_value(1, UKey{1, 0}), ConfigError);
    const std::vector<double> o{0.0, 0.0};
    CHECK_THROWS_AS(u_plus_one_direct(o), ConfigError);
  }
}
