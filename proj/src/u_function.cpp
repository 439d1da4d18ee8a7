#include "riesz/u_function.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <tuple>
#include <vector>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"
#include "riesz/theta.hpp"

namespace riesz {
namespace {

constexpr double kZMax = 9.0;  // e^{-81} Gaussian tail

void check_dim(int d) {
  if (d < 2) throw ConfigError("dimension must be at least 2");
}

void check_key(int d, UKey key) {
  check_dim(d);
  if (key.r2 < 1) throw ConfigError("U is undefined at m = 0");
  if (key.e < 0 || key.e > d) throw ConfigError("even count out of range");
  // Every odd coordinate contributes at least 1 to |m|^2; odd squares are
  // 1 mod 8 and even squares 0 mod 4.
  if (key.r2 < d - key.e || (key.r2 - (d - key.e)) % 4 != 0)
    throw ConfigError("no lattice point has this U class");
}

// 1 - q0(t)^e q1(t)^{d-e} at t = r2 / (4 s).
double one_minus_v(int d, UKey key, double s, double q_eps) {
  const double t = static_cast<double>(key.r2) / (4.0 * s);
  double l = 0.0;
  if (key.e > 0) l += key.e * std::log1p(q_minus_one(0, t, q_eps));
  if (key.e < d) l += (d - key.e) * std::log1p(q_minus_one(1, t, q_eps));
  return -std::expm1(l);
}

const std::vector<double> kSBreaks{0.5, 2.0, 5.0, 10.0, 20.0, 40.0, 80.0, 130.0};

// (1/sqrt(pi)) int e^{-z^2} (1/theta(z sqrt(t) + a, t) - 1) dz.
double j_factor(double a, double t, double eps) {
  const double st = std::sqrt(t);
  auto f = [&](double z) {
    return std::exp(-z * z) * std::expm1(-log_theta(z * st + a, t));
  };
  // 1/theta peaks where z sqrt(t) + a is a half-integer.
  std::vector<double> breaks{0.0};
  const double lo = -kZMax * st + a, hi = kZMax * st + a;
  for (double k = std::ceil(lo - 0.5); k + 0.5 <= hi; k += 1.0) {
    const double z = (k + 0.5 - a) / st;
    if (z > -kZMax && z < kZMax) breaks.push_back(z);
    if (breaks.size() > 64) break;
  }
  AdaptiveOptions opt;
  opt.abs_tol = eps;
  opt.rel_tol = 1e-12;
  opt.max_panels = 50000;
  return integrate_adaptive(f, -kZMax, kZMax, opt, breaks).value / std::sqrt(M_PI);
}

}  // namespace

int even_count(std::span<const int> m) {
  int e = 0;
  for (int v : m) e += (v % 2 == 0);
  return e;
}

UKey u_key(std::span<const int> m) {
  UKey k;
  for (int v : m) k.r2 += static_cast<std::int64_t>(v) * v;
  k.e = even_count(m);
  return k;
}

double u_plus_one_quadrature(int d, UKey key, const UOptions& opt) {
  check_key(d, key);
  const double gamma = std::tgamma(0.5 * d + 1.0);
  const double half_d = 0.5 * d;
  const double q_eps = 1e-3 * opt.eps;
  auto f = [&](double s) {
    return std::pow(s, half_d) * std::exp(-s) * one_minus_v(d, key, s, q_eps);
  };
  AdaptiveOptions ao;
  ao.abs_tol = opt.eps * gamma;
  ao.rel_tol = 1e-12;
  const QuadResult r = integrate_adaptive(f, 0.0, opt.s_max, ao, kSBreaks);
  return r.value / gamma;
}

double u_plus_one_laguerre(int d, UKey key, std::size_t nodes) {
  check_key(d, key);
  const double half_d = 0.5 * d;
  const Rule rule = gauss_laguerre(nodes, half_d);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double u = rule.nodes[i];
    sum += rule.weights[i] * std::exp(-u) * one_minus_v(d, key, 2.0 * u, 1e-15);
  }
  return std::pow(2.0, half_d + 1.0) * sum / std::tgamma(half_d + 1.0);
}

double u_plus_one_direct(std::span<const double> x, const UOptions& opt) {
  const int d = static_cast<int>(x.size());
  check_dim(d);
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (!(r2 > 0.0)) throw ConfigError("U is undefined at the origin");
  const double gamma = std::tgamma(0.5 * d + 1.0);
  const double half_d = 0.5 * d;
  auto f = [&](double s) {
    const double t = r2 / (4.0 * s);
    double l = 0.0;
    for (double v : x) l += std::log1p(j_factor(0.5 * v, t, 1e-3 * opt.eps));
    return std::pow(s, half_d) * std::exp(-s) * -std::expm1(l);
  };
  AdaptiveOptions ao;
  ao.abs_tol = opt.eps * gamma;
  ao.rel_tol = 1e-10;
  return integrate_adaptive(f, 0.0, opt.s_max, ao, kSBreaks).value / gamma;
}

double u_plus_one(int d, UKey key, const UOptions& opt) {
  auto& cache = UCache::instance();
  double v;
  if (!cache.lookup(d, key, opt.eps, v)) {
    v = u_plus_one_quadrature(d, key, opt);
    cache.insert(d, key, opt.eps, v);
  }
  return v;
}

double u_value(int d, UKey key, const UOptions& opt) {
  return u_plus_one(d, key, opt) - 1.0;
}

double u_value(std::span<const int> m, const UOptions& opt) {
  return u_value(static_cast<int>(m.size()), u_key(m), opt);
}

double u_value_direct(std::span<const int> m, const UOptions& opt) {
  std::vector<double> x(m.begin(), m.end());
  return u_plus_one_direct(x, opt) - 1.0;
}

double u_value_direct_real(std::span<const double> x, const UOptions& opt) {
  return u_plus_one_direct(x, opt) - 1.0;
}

struct UCache::Impl {
  using Key = std::tuple<int, std::int64_t, int, double>;
  mutable std::shared_mutex mu;
  std::map<Key, double> values;
};

UCache& UCache::instance() {
  static UCache cache;
  return cache;
}

UCache::Impl& UCache::impl() const {
  static Impl impl;
  return impl;
}

bool UCache::lookup(int d, UKey key, double eps, double& u_plus_one) const {
  auto& im = impl();
  std::shared_lock lock(im.mu);
  auto it = im.values.find({d, key.r2, key.e, eps});
  if (it == im.values.end()) return false;
  u_plus_one = it->second;
  return true;
}

void UCache::insert(int d, UKey key, double eps, double u_plus_one) {
  auto& im = impl();
  std::unique_lock lock(im.mu);
  im.values.emplace(Impl::Key{d, key.r2, key.e, eps}, u_plus_one);
}

void UCache::clear() {
  auto& im = impl();
  std::unique_lock lock(im.mu);
  im.values.clear();
}

std::size_t UCache::size() const {
  auto& im = impl();
  std::shared_lock lock(im.mu);
  return im.values.size();
}

std::size_t UCache::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) return 0;
  std::size_t n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream is(line);
    int d, e;
    std::int64_t r2;
    double eps, value;
    if (!(is >> d >> r2 >> e >> eps >> value)) continue;  // torn line
    insert(d, UKey{r2, e}, eps, value);
    ++n;
  }
  return n;
}

std::size_t UCache::save(const std::filesystem::path& file) const {
  std::map<Impl::Key, double> present;
  {
    std::ifstream in(file);
    std::string line;
    while (in && std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::istringstream is(line);
      int d, e;
      std::int64_t r2;
      double eps, value;
      if (is >> d >> r2 >> e >> eps >> value) present[{d, r2, e, eps}] = value;
    }
  }
  const bool fresh = !std::filesystem::exists(file);
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file, std::ios::app);
  if (!out) throw ConfigError("cannot write U cache file " + file.string());
  if (fresh) out << "# riesz U+1 cache v1: d r2 e eps value\n";
  out.precision(17);
  std::size_t n = 0;
  auto& im = impl();
  std::shared_lock lock(im.mu);
  for (const auto& [k, v] : im.values) {
    if (present.count(k)) continue;
    out << std::get<0>(k) << ' ' << std::get<1>(k) << ' ' << std::get<2>(k) << ' '
        << std::get<3>(k) << ' ' << v << '\n';
    ++n;
  }
  return n;
}

std::filesystem::path cache_directory() {
  const char* dir = std::getenv("RIESZ_CACHE_DIR");
  if (dir == nullptr || *dir == '\0') return {};
  return std::filesystem::path(dir);
}

}  // namespace riesz
