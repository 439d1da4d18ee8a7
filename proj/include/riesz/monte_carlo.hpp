#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "riesz/u_function.hpp"

namespace riesz {

/// 1/G with G ~ Gamma(shape alpha, rate beta). std::gamma_distribution in
/// libstdc++ is the Marsaglia-Tsang squeeze method.
double sample_inverse_gamma(double alpha, double beta, std::mt19937_64& rng);

struct MCReport {
  double mean = 0.0;
  double standard_error = 0.0;  // sample standard deviation / sqrt(n)
  std::uint64_t n = 0;
  std::uint64_t seed = 0;
  std::vector<int> m;
  int d = 0;
  UKey key;
};

struct MCOptions {
  /// Independent substreams, each seeded from (seed, stream index). Fixed so
  /// results do not depend on the thread count.
  int streams = 64;
  /// When set, receives every sample in stream order.
  std::vector<double>* samples = nullptr;
};

/// U(m) = -E[1 / H_S(B/sqrt(2) + m/2)] with S ~ InvGamma((d+2)/2, |m|^2/4) and
/// B ~ N(0, S I_d).
MCReport u_monte_carlo(std::span<const int> m, std::uint64_t n, std::uint64_t seed,
                       const MCOptions& opt = {});

}  // namespace riesz
