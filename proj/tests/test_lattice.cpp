#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "riesz/errors.hpp"
#include "riesz/lattice.hpp"

using namespace riesz;

namespace {

LatticeFunction random_function(int dim, int h, std::uint64_t seed, bool complex_values = true) {
  LatticeFunction f = LatticeFunction::cube(dim, h);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  for (auto& v : f.values) v = cplx(g(rng), complex_values ? g(rng) : 0.0);
  return f;
}

double max_diff(const LatticeFunction& a, const LatticeFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.at(a.point(i))));
  for (std::size_t i = 0; i < b.size(); ++i) m = std::max(m, std::abs(b.values[i] - a.at(b.point(i))));
  return m;
}

// R_jk applied to A exp(-|x-c|^2 / (2 s^2)) in d = 2, written as
// d_j d_k (-Delta)^{-1} F through the heat semigroup and integrated in
// closed form over the semigroup time.
double heat_semigroup_oracle(int j, int k, const SmoothSampler& F, std::span<const double> x) {
  const double y[2] = {x[0] - F.center[0], x[1] - F.center[1]};
  const double s2 = F.sigma * F.sigma;
  const double a = 0.5 * (y[0] * y[0] + y[1] * y[1]);
  const double w = 1.0 / s2;
  const double e = std::exp(-a * w);
  double v = y[j - 1] * y[k - 1] * (1.0 - (1.0 + a * w) * e) / (a * a);
  if (j == k) v -= (1.0 - e) / a;
  return 0.5 * F.amplitude * s2 * v;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("lattice functions") {
    const LatticeFunction d = LatticeFunction::delta(2, 3);
    CHECK(d.size() == 49);
    CHECK(d.lp_norm(2.0) == 1.0);
    CHECK(d.lp_norm(1.5) == 1.0);
    const std::vector<int> o{0, 0}, far{5, 0};
    CHECK(d.at(o) == cplx(1.0));
    CHECK(d.at(far) == cplx{});
    LatticeFunction c = LatticeFunction::cube(2, 1);
    for (auto& v : c.values) v = 2.0;
    CHECK(c.lp_norm(2.0) == doctest::Approx(6.0));
    CHECK(c.lp_norm(INFINITY) == 2.0);
    const std::vector<int> s{2, -1};
    const LatticeFunction t = translate(d, s);
    CHECK(t.at(s) == cplx(1.0));
    const LatticeFunction r = restrict_to(t, {1, 1});
    CHECK(r.lp_norm(2.0) == 0.0);
    CHECK_THROWS_AS(c.lp_norm(0.5), ConfigError);
  }

  TEST_CASE("a zero kernel gives zero") {
    KernelTable z = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 4);
    for (auto& v : z.values) v = cplx{};
    const LatticeFunction f = random_function(2, 5, 1);
    CHECK(apply_kernel(z, f, ApplyMethod::Direct).lp_norm(2.0) == 0.0);
    CHECK(apply_kernel(z, f, ApplyMethod::Fft).lp_norm(2.0) == 0.0);
  }

  TEST_CASE("the delta reproduces the table") {
    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 10);
    for (ApplyMethod m : {ApplyMethod::Direct, ApplyMethod::Fft}) {
      const LatticeFunction out = apply_kernel(t, LatticeFunction::delta(2, 0), m);
      CHECK(out.half == std::vector<int>{10, 10});
      for (std::size_t i = 0; i < out.size(); ++i)
        CHECK(std::abs(out.values[i] - t.values[i]) <= 1e-15);
    }
  }

  TEST_CASE("direct and FFT convolution agree") {
    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 16);
    const LatticeFunction f = random_function(2, 16, 2);
    const auto a = apply_kernel(t, f, ApplyMethod::Direct);
    const auto b = apply_kernel(t, f, ApplyMethod::Fft);
    CHECK(max_diff(a, b) <= 1e-10);
    const KernelTable t3 = build_table(KernelSpec::single(Family::ClassicalDiscrete, 3, 1, 3), 5);
    const LatticeFunction g = random_function(3, 4, 3);
    CHECK(max_diff(apply_kernel(t3, g, ApplyMethod::Direct), apply_kernel(t3, g, ApplyMethod::Fft)) <= 1e-10);
  }

  TEST_CASE("translation equivariance") {
    const KernelTable t = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 1), 8);
    const LatticeFunction f = random_function(2, 6, 4);
    const std::vector<int> s{3, -2};
    const auto lhs = apply_kernel(t, translate(f, s));
    const auto rhs = translate(apply_kernel(t, f), s);
    CHECK(max_diff(lhs, rhs) <= 1e-12);
  }

  TEST_CASE("adjoint") {
    const KernelTable t = build_table(KernelSpec::beurling_ahlfors(Family::BAProbabilistic), 9);
    const KernelTable ta = adjoint_table(t);
    const LatticeFunction f = random_function(2, 7, 5), g = random_function(2, 7, 6);
    const cplx lhs = inner(apply_kernel(t, f), g);
    const cplx rhs = inner(f, apply_kernel(ta, g));
    CHECK(std::abs(lhs - rhs) <= 1e-11 * std::abs(lhs));
    // Real even kernels are self-adjoint.
    const KernelTable s = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 9);
    CHECK(adjoint_table(s).values == s.values);
  }

  TEST_CASE("composite specs are linear") {
    const LatticeFunction f = random_function(2, 6, 7);
    const auto spec = KernelSpec::difference(Family::Probabilistic, 2, 1, 2);
    const auto lhs = apply_composite(spec, 10, f);
    const auto a = apply_kernel(build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 1), 10), f);
    const auto b = apply_kernel(build_table(KernelSpec::single(Family::Probabilistic, 2, 2, 2), 10), f);
    LatticeFunction diff = a;
    for (std::size_t i = 0; i < diff.size(); ++i) diff.values[i] -= b.values[i];
    CHECK(max_diff(lhs, diff) <= 1e-12);
    // A single table of the combination gives the same operator.
    CHECK(max_diff(lhs, apply_kernel(build_table(spec, 10), f)) <= 1e-12);
  }

  TEST_CASE("trace of the discrete kernel") {
    KernelSpec spec;
    spec.family = Family::ClassicalDiscrete;
    spec.terms = {KernelTerm{1.0, 1, 1}, KernelTerm{1.0, 2, 2}};
    const auto out = apply_composite(spec, 6, LatticeFunction::delta(2, 0));
    for (std::size_t i = 0; i < out.size(); ++i) {
      const auto m = out.point(i);
      const double r2 = double(m[0]) * m[0] + double(m[1]) * m[1];
      const double expect = (r2 == 0.0 || r2 > 36) ? 0.0 : 1.0 / (M_PI * r2);
      CHECK(std::abs(out.values[i] - expect) <= 1e-15);
    }
  }

  TEST_CASE("Beurling-Ahlfors real and imaginary parts") {
    const LatticeFunction f = random_function(2, 5, 8, false);
    const auto b = apply_kernel(build_table(KernelSpec::beurling_ahlfors(Family::BADiscrete), 8), f);
    const auto diff = apply_composite(KernelSpec::difference(Family::ClassicalDiscrete, 2, 2, 1), 8, f);
    const auto r21 = apply_kernel(build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 2, 1, 2.0), 8), f);
    double worst = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
      const auto n = b.point(i);
      worst = std::max(worst, std::abs(b.values[i].real() - diff.at(n).real()));
      worst = std::max(worst, std::abs(b.values[i].imag() - r21.at(n).real()));
    }
    CHECK(worst <= 1e-12);
  }

  TEST_CASE("box compression") {
    const KernelTable t = build_table(KernelSpec::single(Family::Probabilistic, 2, 1, 2), 30);
    const BoxOperator op(t, {6, 6});
    const LatticeFunction f = random_function(2, 6, 9);
    const auto full = restrict_to(apply_kernel(t, f), {6, 6});
    CHECK(max_diff(op.apply(f), full) <= 1e-12);
    const auto fulladj = restrict_to(apply_kernel(adjoint_table(t), f), {6, 6});
    CHECK(max_diff(op.apply_adjoint(f), fulladj) <= 1e-12);
    const BoxOperator rect(t, {3, 7});
    const LatticeFunction g = restrict_to(f, {3, 7});
    CHECK(max_diff(rect.apply(g), restrict_to(apply_kernel(t, g), {3, 7})) <= 1e-12);
  }

  TEST_CASE("Fourier oracle against the closed-form heat-semigroup integral") {
    const SmoothSampler F = SmoothSampler::gaussian({0.2, -0.1}, 0.8);
    for (auto x : std::vector<std::vector<double>>{{0.3, 0.1}, {0.7, -0.4}, {-0.5, 1.2}, {2.0, 1.5}}) {
      for (auto [j, k] : {std::pair{1, 2}, std::pair{1, 1}, std::pair{2, 2}}) {
        const OracleResult r = classical_riesz_oracle(j, k, F, x);
        CHECK(std::abs(r.value - heat_semigroup_oracle(j, k, F, x)) <= 1e-10);
        CHECK(r.error <= 1e-9);
      }
      const double trace = classical_riesz_oracle(1, 1, F, x).value + classical_riesz_oracle(2, 2, F, x).value;
      CHECK(std::abs(trace + F(x)) <= 1e-10);
    }
  }

  TEST_CASE("sampler Fourier transform") {
    SmoothSampler F = SmoothSampler::gaussian({0.3, -0.2}, 0.7);
    F.powers = {1, 0};
    // Riemann sum of F(x) e^{-2 pi i x.xi} on a fine grid.
    const std::vector<double> xi{0.4, 0.25};
    cplx s{};
    const double h = 0.02;
    for (int a = -400; a <= 400; ++a)
      for (int b = -400; b <= 400; ++b) {
        const std::vector<double> x{a * h, b * h};
        s += F(x) * std::polar(1.0, -2 * M_PI * (x[0] * xi[0] + x[1] * xi[1]));
      }
    s *= h * h;
    CHECK(std::abs(s - F.fourier(xi)) <= 1e-10);
    F.powers = {2, 0};
    CHECK_FALSE(F.has_fourier());
    CHECK_THROWS_AS(F.fourier(xi), ConfigError);
  }

  TEST_CASE("dilation") {
    const KernelTable t = build_table(KernelSpec::single(Family::ClassicalDiscrete, 2, 1, 2), 120);
    const SmoothSampler F = SmoothSampler::gaussian({0.0, 0.0}, 1.0);
    const std::vector<double> o{0.0, 0.0};
    CHECK(std::abs(dilated_apply(t, F, 0.25, o)) <= 1e-15);
    const std::vector<double> x{0.3, 0.1};
    const double ref = heat_semigroup_oracle(1, 2, F, x);
    double prev = INFINITY;
    for (double eps : {0.25, 0.125, 0.0625}) {
      const double err = std::abs(dilated_apply(t, F, eps, x) - ref);
      CHECK(err < prev);
      prev = err;
    }
    CHECK(prev < 1e-4);
    CHECK_THROWS_AS(dilated_apply(t, F, 0.01, x), ConfigError);
  }
}
