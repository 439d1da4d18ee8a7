#include <cmath>
#include <vector>

#include "doctest.h"
#include "riesz/errors.hpp"
#include "riesz/multiplier.hpp"

using namespace riesz;

TEST_SUITE("multiplier") {
  TEST_CASE("grid geometry and weights") {
    const KernelTable t = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 10);
    MultiplierOptions opt;
    opt.resolution = 16;
    const MultiplierGrid g = multiplier_eval(t, opt);
    CHECK(g.values.size() == 256);
    CHECK(g.xi(0) == std::vector<double>{-0.5, -0.5});
    CHECK(g.xi(17) == std::vector<double>{-0.5 + 1.0 / 16, -0.5 + 1.0 / 16});
    CHECK(g.tail_flag);
    const std::vector<int> m{3, 4};
    CHECK(summation_weight(opt, 10, m) == 1.0);
    opt.summation = Summation::Gauss;
    CHECK(summation_weight(opt, 10, m) == doctest::Approx(std::exp(-25.0 / 8.0)));
    opt.resolution = 7;
    CHECK_THROWS_AS(multiplier_eval(t, opt), ConfigError);
  }

  TEST_CASE("odd kernels vanish at the origin, even kernels are real") {
    const KernelTable odd = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 40);
    MultiplierOptions opt;
    opt.resolution = 64;
    const MultiplierGrid g = multiplier_eval(odd, opt);
    CHECK(std::abs(g.at_origin()) <= 1e-13);
    double imag = 0.0;
    for (const auto& v : g.values) imag = std::max(imag, std::abs(v.imag()));
    CHECK(imag <= 1e-13);
    const KernelTable even = build_table(KernelSpec::difference(Family::Probabilistic, 2, 1, 2), 40);
    const MultiplierGrid h = multiplier_eval(even, opt);
    for (const auto& v : h.values) CHECK(std::abs(v.imag()) <= 1e-13);
  }

  TEST_CASE("grid values match direct phase sums at every resolution") {
    const KernelTable t = build_table(KernelSpec::beurling_ahlfors(Family::BAProbabilistic), 50);
    MultiplierOptions a, b;
    a.resolution = 256;
    b.resolution = 512;
    const MultiplierGrid ga = multiplier_eval(t, a), gb = multiplier_eval(t, b);
    double worst = 0.0;
    for (int i = 0; i < 256; i += 5)
      for (int j = 0; j < 256; j += 7) {
        const cplx va = ga.values[std::size_t(i) * 256 + j];
        const cplx vb = gb.values[std::size_t(2 * i) * 512 + 2 * j];
        worst = std::max(worst, std::abs(va - vb));
        const auto xi = ga.xi(std::size_t(i) * 256 + j);
        worst = std::max(worst, std::abs(va - multiplier_at(t, xi, a)));
      }
    CHECK(worst <= 1e-12);
    MultiplierOptions g = a;
    g.summation = Summation::Gauss;
    const MultiplierGrid gg = multiplier_eval(t, g);
    const auto xi = gg.xi(1234);
    CHECK(std::abs(gg.values[1234] - multiplier_at(t, xi, g)) <= 1e-12);
  }

  TEST_CASE("sup norm") {
    KernelTable z = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 5);
    for (auto& v : z.values) v = cplx{};
    const SupResult zs = sup_norm(z, multiplier_eval(z, {}));
    CHECK(zs.value == 0.0);

    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 40);
    MultiplierOptions opt;
    opt.resolution = 128;
    const MultiplierGrid g = multiplier_eval(t, opt);
    const SupResult s = sup_norm(t, g);
    CHECK(s.value >= s.grid_max);
    CHECK(s.argmax.size() == 2);
    CHECK(std::abs(multiplier_at(t, s.argmax, opt)) == doctest::Approx(s.value).epsilon(1e-12));
  }

  TEST_CASE("the Gibbs peak of a sharp ball sum is found between grid points") {
    // Sharp sums peak near |xi| ~ 0.58/R on the diagonal; at R = 200 that
    // falls between points of the 512 grid.
    const KernelTable t = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 200);
    const SupResult s = sup_norm(t, multiplier_eval(t, {}));
    double scan = 0.0;
    for (int i = 1; i <= 500; ++i) {
      const std::vector<double> xi{i * 2e-5, i * 2e-5};
      scan = std::max(scan, std::abs(multiplier_at(t, xi)));
    }
    CHECK(s.value >= scan - 1e-9);
    CHECK(s.value > s.grid_max + 0.03);
    // The overshoot does not decay with R.
    const KernelTable t100 = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 100);
    CHECK(std::abs(sup_norm(t100, multiplier_eval(t100, {})).value - s.value) <= 0.02);
  }

  TEST_CASE("power iteration is bounded by the multiplier and grows with the box") {
    const int R = 91;  // >= 2 h sqrt(2) for h = 32
    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), R);
    const SupResult s = sup_norm(t, multiplier_eval(t, {}));
    double prev = 0.0;
    for (int h : {8, 16, 32}) {
      const double n = l2_norm_power_iteration(t, h, 400, 1);
      CHECK(n <= s.value + 0.01);
      CHECK(n >= prev - 1e-3);
      prev = n;
    }
    CHECK(prev > 0.5 * s.value);
  }
}
