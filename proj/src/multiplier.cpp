#include "riesz/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "riesz/errors.hpp"
#include "riesz/fft.hpp"
#include "riesz/lattice.hpp"
#include "riesz/parallel.hpp"

namespace riesz {
namespace {

// Nonzero table entries with summation weights applied.
struct SparseKernel {
  int dim = 0;
  int radius = 0;
  std::vector<int> coords;  // dim per entry
  std::vector<cplx> values;

  SparseKernel(const KernelTable& t, const MultiplierOptions& opt)
      : dim(t.dim()), radius(t.radius) {
    for (std::size_t i = 0; i < t.values.size(); ++i) {
      if (t.values[i] == cplx{}) continue;
      const auto m = t.point(i);
      coords.insert(coords.end(), m.begin(), m.end());
      values.push_back(t.values[i] * summation_weight(opt, t.radius, m));
    }
  }

  cplx eval(std::span<const double> xi) const {
    // Phases per axis, indexed by m_a + R.
    const int side = 2 * radius + 1;
    std::vector<cplx> ph(static_cast<std::size_t>(dim * side));
    for (int a = 0; a < dim; ++a)
      for (int m = -radius; m <= radius; ++m)
        ph[a * side + m + radius] = std::polar(1.0, -2.0 * M_PI * m * xi[a]);
    cplx s{};
    for (std::size_t e = 0; e < values.size(); ++e) {
      cplx p = values[e];
      for (int a = 0; a < dim; ++a) p *= ph[a * side + coords[e * dim + a] + radius];
      s += p;
    }
    return s;
  }
};

constexpr double kMaxOversampledPoints = 1 << 24;

// Even FFT-friendly length >= n.
int fast_even_length(int n) {
  return 2 * static_cast<int>(fast_fft_length(static_cast<std::size_t>((n + 1) / 2)));
}

MultiplierOptions options_of(const MultiplierGrid& g) {
  MultiplierOptions o;
  o.resolution = g.resolution;
  o.summation = g.summation;
  o.gauss_sigma_fraction = g.radius > 0 ? g.gauss_sigma / g.radius : 0.2;
  return o;
}

}  // namespace

std::vector<double> MultiplierGrid::xi(std::size_t flat) const {
  std::vector<double> x(static_cast<std::size_t>(dim));
  const auto n = static_cast<std::size_t>(resolution);
  for (int a = dim - 1; a >= 0; --a) {
    x[a] = -0.5 + static_cast<double>(flat % n) / resolution;
    flat /= n;
  }
  return x;
}

cplx MultiplierGrid::at_origin() const {
  // Grid index resolution/2 on every axis is xi = 0.
  std::size_t idx = 0;
  for (int a = 0; a < dim; ++a)
    idx = idx * static_cast<std::size_t>(resolution) + static_cast<std::size_t>(resolution / 2);
  return values[idx];
}

double summation_weight(const MultiplierOptions& opt, int radius, std::span<const int> m) {
  if (opt.summation == Summation::Sharp) return 1.0;
  const double sigma = opt.gauss_sigma_fraction * radius;
  double r2 = 0.0;
  for (int v : m) r2 += static_cast<double>(v) * v;
  return std::exp(-r2 / (2.0 * sigma * sigma));
}

MultiplierGrid multiplier_eval(const KernelTable& table, const MultiplierOptions& opt) {
  if (opt.resolution < 8 || opt.resolution % 2 != 0)
    throw ConfigError("multiplier resolution must be even and at least 8");
  if (opt.summation == Summation::Gauss && !(opt.gauss_sigma_fraction > 0.0))
    throw ConfigError("Gauss summation width must be positive");
  const int d = table.dim();
  const int N = opt.resolution;
  MultiplierGrid g;
  g.dim = d;
  g.resolution = N;
  g.radius = table.radius;
  g.summation = opt.summation;
  g.gauss_sigma = opt.gauss_sigma_fraction * table.radius;
  g.tail_flag = !std::isfinite(table.tail_bound);

  FftPlan plan(std::vector<int>(static_cast<std::size_t>(d), N));
  cplx* buf = plan.data();
  std::fill(buf, buf + plan.size(), cplx{});
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    if (table.values[i] == cplx{}) continue;
    const auto m = table.point(i);
    std::size_t idx = 0;
    for (int v : m) idx = idx * N + static_cast<std::size_t>(((v % N) + N) % N);
    buf[idx] += table.values[i] * summation_weight(opt, table.radius, m);
  }
  plan.forward();
  g.values.resize(plan.size());
  // Grid index k_a corresponds to FFT frequency k_a - N/2 (mod N).
  for (std::size_t i = 0; i < plan.size(); ++i) {
    std::size_t rest = i, src = 0, stride = 1;
    for (int a = d - 1; a >= 0; --a) {
      const std::size_t k = rest % N;
      rest /= N;
      src += ((k + N / 2) % N) * stride;
      stride *= N;
    }
    g.values[i] = buf[src];
  }
  return g;
}

cplx multiplier_at(const KernelTable& table, std::span<const double> xi,
                   const MultiplierOptions& opt) {
  if (static_cast<int>(xi.size()) != table.dim()) throw ConfigError("dimension mismatch");
  return SparseKernel(table, opt).eval(xi);
}

namespace {

struct Peak {
  double value;
  std::vector<double> xi;
  double step;  // grid spacing the peak was found at
};

// Largest local maxima of |m| on the periodic grid.
std::vector<Peak> grid_peaks(const MultiplierGrid& grid, int candidates) {
  const int d = grid.dim;
  const int N = grid.resolution;
  std::vector<std::pair<double, std::size_t>> peaks;
  std::vector<std::size_t> stride(static_cast<std::size_t>(d));
  stride[d - 1] = 1;
  for (int a = d - 2; a >= 0; --a) stride[a] = stride[a + 1] * N;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const double v = std::abs(grid.values[i]);
    bool peak = true;
    for (int a = 0; a < d && peak; ++a) {
      const std::size_t k = (i / stride[a]) % N;
      const std::size_t up = i - k * stride[a] + ((k + 1) % N) * stride[a];
      const std::size_t dn = i - k * stride[a] + ((k + N - 1) % N) * stride[a];
      peak = v >= std::abs(grid.values[up]) && v >= std::abs(grid.values[dn]);
    }
    if (peak) peaks.emplace_back(v, i);
  }
  std::sort(peaks.begin(), peaks.end(), [](const auto& a, const auto& b) {
    return a.first > b.first || (a.first == b.first && a.second < b.second);
  });
  if (peaks.size() > static_cast<std::size_t>(candidates)) peaks.resize(candidates);
  std::vector<Peak> out;
  for (const auto& [v, i] : peaks) out.push_back({v, grid.xi(i), 1.0 / N});
  return out;
}

// Golden-section coordinate sweeps within one grid step of the start.
void refine_peak(const SparseKernel& sk, Peak& p, int iterations) {
  const int d = static_cast<int>(p.xi.size());
  auto f = [&](const std::vector<double>& y) { return std::abs(sk.eval(y)); };
  std::vector<double> x = p.xi;
  double best = f(x);
  constexpr double g = 0.6180339887498949;
  for (int it = 0; it < iterations; ++it) {
    for (int a = 0; a < d; ++a) {
      double lo = x[a] - p.step, hi = x[a] + p.step;
      std::vector<double> y = x;
      double c1 = hi - g * (hi - lo), c2 = lo + g * (hi - lo);
      y[a] = c1;
      double f1 = f(y);
      y[a] = c2;
      double f2 = f(y);
      for (int s = 0; s < 40; ++s) {
        if (f1 > f2) {
          hi = c2;
          c2 = c1;
          f2 = f1;
          c1 = hi - g * (hi - lo);
          y[a] = c1;
          f1 = f(y);
        } else {
          lo = c1;
          c1 = c2;
          f1 = f2;
          c2 = lo + g * (hi - lo);
          y[a] = c2;
          f2 = f(y);
        }
      }
      const double fa = std::max(f1, f2);
      if (fa > best) {
        best = fa;
        x[a] = f1 > f2 ? c1 : c2;
      }
    }
  }
  p.value = best;
  p.xi = x;
}

}  // namespace

SupResult sup_norm(const KernelTable& table, const MultiplierGrid& grid,
                   int refine_iterations, int candidates) {
  SupResult res;
  if (grid.values.empty()) return res;
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.values.size(); ++i) {
    const double v = std::abs(grid.values[i]);
    if (v > res.grid_max) {
      res.grid_max = v;
      best = i;
    }
  }
  res.value = res.grid_max;
  res.argmax = grid.xi(best);
  if (refine_iterations <= 0 || res.grid_max == 0.0) return res;

  std::vector<Peak> peaks = grid_peaks(grid, candidates);
  // Sharp ball sums carry a Gibbs peak at |xi| ~ 1/R that a grid coarser than
  // about 1/(4R) can step over, so candidates also come from an oversampled
  // grid (capped at kMaxOversampledPoints values).
  const int d = grid.dim;
  int fine = fast_even_length(4 * table.radius);
  while (fine > grid.resolution && std::pow(double(fine), d) > kMaxOversampledPoints) fine /= 2;
  fine += fine % 2;
  if (fine > grid.resolution) {
    MultiplierOptions opt = options_of(grid);
    opt.resolution = fine;
    const std::vector<Peak> more = grid_peaks(multiplier_eval(table, opt), candidates);
    peaks.insert(peaks.end(), more.begin(), more.end());
  }

  const SparseKernel sk(table, options_of(grid));
  parallel_for(peaks.size(), [&](std::size_t c) { refine_peak(sk, peaks[c], refine_iterations); });
  for (const auto& p : peaks) {
    if (p.value > res.value) {
      res.value = p.value;
      res.argmax = p.xi;
    }
  }
  return res;
}

double l2_norm_power_iteration(const KernelTable& table, int half_width, int iters,
                               std::uint64_t seed, double rel_tol) {
  if (iters < 1) throw ConfigError("power iteration needs iters >= 1");
  if (half_width < 0) throw ConfigError("box half-width must be nonnegative");
  const BoxOperator op(table, std::vector<int>(static_cast<std::size_t>(table.dim()), half_width));
  const std::size_t n = op.box_size();
  std::vector<cplx> f(n), tf(n), g(n);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (auto& v : f) v = u(rng);
  auto norm = [](const std::vector<cplx>& v) {
    double s = 0.0;
    for (const auto& z : v) s += std::norm(z);
    return std::sqrt(s);
  };
  double nf = norm(f);
  for (auto& v : f) v /= nf;
  double est = 0.0;
  for (int it = 0; it < iters; ++it) {
    op.apply(f, tf);
    const double now = norm(tf);  // ||T f|| with ||f|| = 1
    if (now == 0.0) return 0.0;
    const bool done = it > 0 && std::abs(now - est) <= rel_tol * now;
    est = std::max(est, now);
    if (done) break;
    op.apply_adjoint(tf, g);
    nf = norm(g);
    if (nf == 0.0) break;
    for (std::size_t i = 0; i < n; ++i) f[i] = g[i] / nf;
  }
  return est;
}

}  // namespace riesz
