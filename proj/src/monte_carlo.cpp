#include "riesz/monte_carlo.hpp"

#include <cmath>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"
#include "riesz/theta.hpp"

namespace riesz {
namespace {

// Neumaier-compensated running sum.
struct Compensated {
  double sum = 0.0, c = 0.0;
  void add(double x) {
    const double t = sum + x;
    if (std::abs(sum) >= std::abs(x))
      c += (sum - t) + x;
    else
      c += (x - t) + sum;
    sum = t;
  }
  double value() const { return sum + c; }
};

}  // namespace

double sample_inverse_gamma(double alpha, double beta, std::mt19937_64& rng) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw ConfigError("inverse gamma needs alpha > 0 and beta > 0");
  std::gamma_distribution<double> gamma(alpha, 1.0 / beta);
  double g;
  do {
    g = gamma(rng);
  } while (!(g > 0.0));
  return 1.0 / g;
}

MCReport u_monte_carlo(std::span<const int> m, std::uint64_t n, std::uint64_t seed,
                       const MCOptions& opt) {
  const int d = static_cast<int>(m.size());
  if (d < 2) throw ConfigError("dimension must be at least 2");
  const UKey key = u_key(m);
  if (key.r2 == 0) throw ConfigError("U is undefined at m = 0");
  if (n < 1000) throw ConfigError("Monte-Carlo needs n >= 1000");
  if (opt.streams < 1) throw ConfigError("need at least one stream");
  const double alpha = 0.5 * (d + 2);
  const double beta = 0.25 * static_cast<double>(key.r2);
  const auto streams = static_cast<std::uint64_t>(opt.streams);

  // Samples cluster near -1; accumulate deviations from it.
  constexpr double kShift = -1.0;
  std::vector<Compensated> s1(streams), s2(streams);
  std::vector<std::vector<double>> dump(opt.samples ? streams : 0);
  parallel_for(static_cast<std::size_t>(streams), [&](std::size_t w) {
    const std::uint64_t count = n / streams + (w < n % streams ? 1 : 0);
    std::seed_seq sq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                     static_cast<std::uint32_t>(w), 0x5eedu};
    std::mt19937_64 rng(sq);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<double> y(static_cast<std::size_t>(d));
    if (opt.samples) dump[w].reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
      const double s = sample_inverse_gamma(alpha, beta, rng);
      const double sd = std::sqrt(s);
      for (int a = 0; a < d; ++a) y[a] = sd * normal(rng) / std::sqrt(2.0) + 0.5 * m[a];
      double logh;
      try {
        logh = log_periodic_heat(y, s);
      } catch (const NumericalError& e) {
        std::ostringstream os;
        os << e.what() << " (Monte-Carlo sample at t=" << s << ")";
        throw NumericalError(os.str());
      }
      const double v = -std::exp(-logh);
      if (opt.samples) dump[w].push_back(v);
      s1[w].add(v - kShift);
      s2[w].add((v - kShift) * (v - kShift));
    }
  });
  Compensated t1, t2;
  for (std::uint64_t w = 0; w < streams; ++w) {
    t1.add(s1[w].value());
    t2.add(s2[w].value());
  }
  const double nn = static_cast<double>(n);
  const double mean_dev = t1.value() / nn;
  const double var = std::max(0.0, (t2.value() - nn * mean_dev * mean_dev) / (nn - 1.0));
  MCReport r;
  r.mean = kShift + mean_dev;
  r.standard_error = std::sqrt(var / nn);
  r.n = n;
  r.seed = seed;
  r.m.assign(m.begin(), m.end());
  r.d = d;
  r.key = key;
  if (opt.samples) {
    opt.samples->clear();
    for (auto& v : dump) opt.samples->insert(opt.samples->end(), v.begin(), v.end());
  }
  return r;
}

}  // namespace riesz
