#include <cmath>
#include <vector>

#include "doctest.h"
#include "riesz/errors.hpp"
#include "riesz/multiplier.hpp"
#include "riesz/norm_search.hpp"

using namespace riesz;

TEST_SUITE("norm_search") {
  TEST_CASE("reference constants") {
    CHECK(burkholder_constant(2.0) == 1.0);
    CHECK(burkholder_constant(3.0) == 2.0);
    CHECK(burkholder_constant(1.5) == doctest::Approx(2.0));
    const auto [lo, hi] = choi_bounds(4.0);
    CHECK(lo == 1.5);
    CHECK(hi == 2.0);
    CHECK(choi_bounds(1.5).first == 1.0);
    CHECK(choi_alpha2() == doctest::Approx(0.00898).epsilon(1e-3));
    CHECK(choi_gamma_asymptotic(20.0) == doctest::Approx(9.717).epsilon(1e-4));
    for (double p = 6.0; p <= 50.0; p += 0.5) {
      const auto [a, b] = choi_bounds(p);
      const double g = choi_gamma_asymptotic(p);
      CHECK(g >= a);
      CHECK(g <= b);
    }
    CHECK_THROWS_AS(choi_gamma_asymptotic(5.0), ConfigError);
    CHECK(conformal_bound(2.0) == 2.0);
    CHECK(conformal_bound(3.0) == doctest::Approx(std::sqrt(12.0)));
    CHECK_THROWS_AS(conformal_bound(1.5), ConfigError);
  }

  TEST_CASE("the identity has norm one") {
    KernelTable id = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 2);
    for (auto& v : id.values) v = cplx{};
    const std::vector<int> o{0, 0};
    id.values[id.index(o)] = 1.0;
    for (double p : {1.5, 2.0, 3.0}) {
      NormOptions opt;
      opt.p = p;
      opt.half_width = 4;
      opt.iters = 20;
      const NormEstimate e = lp_lower_bound(id, opt);
      CHECK(e.value == doctest::Approx(1.0).epsilon(1e-12));
    }
  }

  TEST_CASE("witness, duality and agreement with power iteration") {
    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 24);
    NormOptions opt;
    opt.half_width = 8;
    opt.iters = 300;
    opt.p = 2.0;
    const NormEstimate e2 = lp_lower_bound(t, opt);
    CHECK(e2.value == doctest::Approx(l2_norm_power_iteration(t, 8, 400, 3)).epsilon(1e-4));
    opt.p = 3.0;
    const NormEstimate e3 = lp_lower_bound(t, opt);
    CHECK(lp_ratio(t, e3.witness, 3.0) == doctest::Approx(e3.value).epsilon(1e-10));
    CHECK(e3.p == 3.0);
    CHECK(e3.half_width == 8);
    CHECK(e3.radius == 24);
    CHECK_FALSE(e3.start.empty());
    // The kernel is real and even, so the compression is self-adjoint and
    // its p and p' norms coincide.
    opt.p = 1.5;
    const NormEstimate e15 = lp_lower_bound(t, opt);
    CHECK(e15.value == doctest::Approx(e3.value).epsilon(0.02));
    // Riesz-Thorin: the p = 2 norm is at most the p = 3 norm here.
    CHECK(e2.value <= e3.value * (1 + 1e-3));
  }

  TEST_CASE("ladder estimates are nondecreasing") {
    const KernelTable t = build_table(KernelSpec::difference(Family::Probabilistic, 2, 1, 2), 30);
    NormOptions opt;
    opt.p = 3.0;
    opt.iters = 100;
    const auto ladder = lp_lower_bound_ladder(t, {4, 8, 10}, opt);
    REQUIRE(ladder.size() == 3);
    CHECK(ladder[1].value >= ladder[0].value);
    CHECK(ladder[2].value >= ladder[1].value);
    for (const auto& e : ladder) CHECK(e.value == doctest::Approx(lp_ratio(t, e.witness, 3.0)).epsilon(1e-10));
  }

  TEST_CASE("seeds are reproducible") {
    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 12);
    NormOptions opt;
    opt.p = 4.0;
    opt.half_width = 5;
    opt.iters = 50;
    opt.seed = 11;
    const NormEstimate a = lp_lower_bound(t, opt), b = lp_lower_bound(t, opt);
    CHECK(a.value == b.value);
    CHECK(a.witness.values == b.witness.values);
  }

  TEST_CASE("invalid options") {
    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 4);
    NormOptions opt;
    opt.p = 1.0;
    CHECK_THROWS_AS(lp_lower_bound(t, opt), ConfigError);
    opt.p = 2.0;
    opt.half_width = -1;
    CHECK_THROWS_AS(lp_lower_bound(t, opt), ConfigError);
    opt.half_width = 2;
    opt.iters = 0;
    CHECK_THROWS_AS(lp_lower_bound(t, opt), ConfigError);
  }
}
