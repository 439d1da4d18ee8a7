#include <cmath>

#include "doctest.h"
#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

using namespace riesz;

TEST_SUITE("quadrature") {
  TEST_CASE("Gauss-Legendre integrates polynomials of degree 2n-1 exactly") {
    const Rule& r = gauss_legendre(12);
    for (int deg = 0; deg <= 23; ++deg) {
      double s = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], deg);
      const double exact = deg % 2 ? 0.0 : 2.0 / (deg + 1);
      CHECK(s == doctest::Approx(exact).epsilon(1e-14));
    }
  }

  TEST_CASE("Gauss-Hermite moments") {
    const Rule r = gauss_hermite(32);
    double m0 = 0, m2 = 0, m4 = 0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
      const double x = r.nodes[i], w = r.weights[i];
      m0 += w;
      m2 += w * x * x;
      m4 += w * x * x * x * x;
    }
    CHECK(m0 == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-13));
    CHECK(m2 == doctest::Approx(std::sqrt(M_PI) / 2).epsilon(1e-13));
    CHECK(m4 == doctest::Approx(3 * std::sqrt(M_PI) / 4).epsilon(1e-13));
  }

  TEST_CASE("generalized Gauss-Laguerre moments are Gamma values") {
    for (double alpha : {0.0, 1.0, 1.5, 2.0}) {
      const Rule r = gauss_laguerre(64, alpha);
      for (int k = 0; k <= 6; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) s += r.weights[i] * std::pow(r.nodes[i], k);
        CHECK(s == doctest::Approx(std::tgamma(alpha + k + 1)).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("adaptive integration of peaked and oscillatory integrands") {
    auto peak = [](double x) { return 1.0 / (1e-4 + x * x); };
    const QuadResult r = integrate_adaptive(peak, -1.0, 1.0, {1e-10, 1e-12});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-11));
    const QuadResult o = integrate_adaptive([](double x) { return std::cos(50 * x); }, 0.0, 1.0);
    CHECK(o.value == doctest::Approx(std::sin(50.0) / 50.0).epsilon(1e-12));
  }

  TEST_CASE("breakpoints split the initial partition") {
    auto kink = [](double x) { return std::abs(x - 0.3); };
    const QuadResult r = integrate_adaptive(kink, 0.0, 1.0, {1e-14}, {0.3});
    CHECK(r.value == doctest::Approx(0.5 * 0.09 + 0.5 * 0.49).epsilon(1e-14));
    CHECK(r.evaluations < 200);
  }

  TEST_CASE("nonconvergence throws or reports") {
    auto bad = [](double x) { return 1.0 / std::sqrt(std::abs(x)); };
    AdaptiveOptions opt;
    opt.abs_tol = 1e-15;
    opt.max_panels = 20;
    CHECK_THROWS_AS(integrate_adaptive(bad, -1.0, 1.0, opt), NumericalError);
    opt.throw_on_failure = false;
    CHECK_FALSE(integrate_adaptive(bad, -1.0, 1.0, opt).converged);
  }
}
