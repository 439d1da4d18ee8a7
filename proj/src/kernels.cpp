#include "riesz/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/parallel.hpp"

namespace riesz {
namespace {

void check_indices(int j, int k, int d) {
  if (d < 2) throw ConfigError("dimension must be at least 2");
  if (j < 1 || j > d || k < 1 || k > d) {
    std::ostringstream os;
    os << "kernel indices (" << j << "," << k << ") invalid for d=" << d;
    throw ConfigError(os.str());
  }
}

double norm2(std::span<const int> m) {
  double r2 = 0.0;
  for (int v : m) r2 += static_cast<double>(v) * v;
  return r2;
}

// Multiplies K_dis by 1, U, U+1 or U_direct.
enum class Factor { One, U, UPlusOne, UDirect };

Factor factor_of(Family f) {
  switch (f) {
    case Family::ClassicalDiscrete:
    case Family::BADiscrete:
      return Factor::One;
    case Family::Probabilistic:
    case Family::BAProbabilistic:
      return Factor::U;
    case Family::Corrector:
    case Family::BACorrector:
      return Factor::UPlusOne;
    case Family::Continuous:
      return Factor::UDirect;
  }
  return Factor::One;
}

// Surface measure of S^{d-1} times the mean of |w_j w_k| over it.
double angular_mass(int d, int j, int k) {
  const double sphere = 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
  return sphere * (j == k ? 1.0 / d : 2.0 / (M_PI * d));
}

// Orbit representative under coordinate sign flips and permutations.
std::vector<int> orbit_key(std::span<const int> m) {
  std::vector<int> a;
  a.reserve(m.size());
  for (int v : m) a.push_back(std::abs(v));
  std::sort(a.begin(), a.end());
  return a;
}

}  // namespace

double riesz_constant(int d) {
  if (d < 1) throw ConfigError("dimension must be positive");
  return std::pow(M_PI, -0.5 * d) * std::tgamma(0.5 * d + 1.0);
}

double k_dis(int j, int k, std::span<const int> m) {
  const int d = static_cast<int>(m.size());
  check_indices(j, k, d);
  const double r2 = norm2(m);
  if (r2 == 0.0) return 0.0;
  // The integer product first keeps the table exactly symmetric under swaps.
  return riesz_constant(d) * (static_cast<double>(m[j - 1]) * m[k - 1]) /
         std::pow(r2, 0.5 * d + 1.0);
}

double k_prob(int j, int k, std::span<const int> m, const UOptions& opt) {
  const double kd = k_dis(j, k, m);
  if (kd == 0.0) return 0.0;
  return u_value(m, opt) * kd;
}

double j_kernel(int j, int k, std::span<const int> m, const UOptions& opt) {
  const double kd = k_dis(j, k, m);
  if (kd == 0.0) return 0.0;
  return u_plus_one(static_cast<int>(m.size()), u_key(m), opt) * kd;
}

double k_continuous(int j, int k, std::span<const double> x, const UOptions& opt) {
  const int d = static_cast<int>(x.size());
  check_indices(j, k, d);
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  if (!(r2 > 0.0)) throw ConfigError("continuous kernel is singular at x = 0");
  const double base = riesz_constant(d) * (x[j - 1] * x[k - 1]) / std::pow(r2, 0.5 * d + 1.0);
  if (r2 < 1.0) return -base;
  if (base == 0.0) return 0.0;
  return u_value_direct_real(x, opt) * base;
}

cplx ba_kernel(BAVariant variant, std::span<const int> m, const UOptions& opt) {
  if (m.size() != 2) throw ConfigError("Beurling-Ahlfors kernels require d = 2");
  if (m[0] == 0 && m[1] == 0) throw ConfigError("Beurling-Ahlfors kernel at m = 0");
  const cplx z(m[0], m[1]);
  const cplx discrete = -1.0 / (M_PI * z * z);
  switch (variant) {
    case BAVariant::Discrete:
      return discrete;
    case BAVariant::Probabilistic:
      return u_value(m, opt) * discrete;
    case BAVariant::Corrector:
      return u_plus_one(2, u_key(m), opt) * discrete;
  }
  return discrete;
}

std::string to_string(Family f) {
  switch (f) {
    case Family::ClassicalDiscrete: return "classical_discrete";
    case Family::Probabilistic: return "probabilistic";
    case Family::Corrector: return "corrector";
    case Family::Continuous: return "continuous";
    case Family::BADiscrete: return "ba_discrete";
    case Family::BAProbabilistic: return "ba_probabilistic";
    case Family::BACorrector: return "ba_corrector";
  }
  return "?";
}

Family family_from_string(const std::string& s) {
  static const std::map<std::string, Family> names{
      {"classical_discrete", Family::ClassicalDiscrete},
      {"discrete", Family::ClassicalDiscrete},
      {"probabilistic", Family::Probabilistic},
      {"corrector", Family::Corrector},
      {"corrector_J", Family::Corrector},
      {"continuous", Family::Continuous},
      {"continuous_CZ", Family::Continuous},
      {"ba_discrete", Family::BADiscrete},
      {"BA_discrete", Family::BADiscrete},
      {"ba_probabilistic", Family::BAProbabilistic},
      {"BA_probabilistic", Family::BAProbabilistic},
      {"ba_corrector", Family::BACorrector},
      {"BA_corrector", Family::BACorrector},
  };
  auto it = names.find(s);
  if (it == names.end()) throw ConfigError("unknown kernel family '" + s + "'");
  return it->second;
}

bool is_ba(Family f) {
  return f == Family::BADiscrete || f == Family::BAProbabilistic ||
         f == Family::BACorrector;
}

KernelSpec KernelSpec::single(Family f, int dim, int j, int k, double coef) {
  KernelSpec s;
  s.family = f;
  s.dim = dim;
  s.terms = {KernelTerm{cplx(coef, 0.0), j, k}};
  s.validate();
  return s;
}

KernelSpec KernelSpec::difference(Family f, int dim, int j, int k) {
  KernelSpec s;
  s.family = f;
  s.dim = dim;
  s.terms = {KernelTerm{cplx(1.0, 0.0), j, j}, KernelTerm{cplx(-1.0, 0.0), k, k}};
  s.validate();
  return s;
}

KernelSpec KernelSpec::beurling_ahlfors(Family f) {
  KernelSpec s;
  s.family = f;
  s.dim = 2;
  // B = (R22 - R11) + 2i R21.
  s.terms = {KernelTerm{cplx(-1.0, 0.0), 1, 1}, KernelTerm{cplx(1.0, 0.0), 2, 2},
             KernelTerm{cplx(0.0, 2.0), 2, 1}};
  s.validate();
  return s;
}

void KernelSpec::validate() const {
  if (dim < 2) throw ConfigError("dimension must be at least 2");
  if (is_ba(family) && dim != 2)
    throw ConfigError("Beurling-Ahlfors families require d = 2");
  if (terms.empty()) throw ConfigError("kernel spec has no terms");
  for (const auto& t : terms) check_indices(t.j, t.k, dim);
}

std::string KernelSpec::describe() const {
  std::ostringstream os;
  os << to_string(family) << " d=" << dim << ":";
  if (is_ba(family)) {
    os << " B";
    return os.str();
  }
  bool first = true;
  for (const auto& t : terms) {
    const double re = t.coef.real(), im = t.coef.imag();
    os << (first ? " " : (re < 0 && im == 0 ? " - " : " + "));
    const double a = (!first && re < 0 && im == 0) ? -re : re;
    if (im != 0.0) {
      os << "(" << re << (im < 0 ? "-" : "+") << std::abs(im) << "i)*";
    } else if (a != 1.0) {
      os << a << "*";
    }
    os << "(" << t.j << "," << t.k << ")";
    first = false;
  }
  return os.str();
}

std::size_t KernelTable::index(std::span<const int> m) const {
  std::size_t idx = 0;
  for (int v : m) idx = idx * static_cast<std::size_t>(side()) + static_cast<std::size_t>(v + radius);
  return idx;
}

bool KernelTable::contains(std::span<const int> m) const {
  if (static_cast<int>(m.size()) != dim()) return false;
  for (int v : m)
    if (v < -radius || v > radius) return false;
  return true;
}

cplx KernelTable::at(std::span<const int> m) const {
  return contains(m) ? values[index(m)] : cplx{};
}

std::vector<int> KernelTable::point(std::size_t flat) const {
  std::vector<int> m(static_cast<std::size_t>(dim()));
  const auto s = static_cast<std::size_t>(side());
  for (int a = dim() - 1; a >= 0; --a) {
    m[static_cast<std::size_t>(a)] = static_cast<int>(flat % s) - radius;
    flat /= s;
  }
  return m;
}

bool KernelTable::is_real(double tol) const {
  for (const auto& v : values)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

KernelTable build_table(const KernelSpec& spec_in, int radius, const UOptions& opt) {
  spec_in.validate();
  KernelSpec spec = spec_in;
  if (is_ba(spec.family)) spec.terms = KernelSpec::beurling_ahlfors(spec.family).terms;
  if (radius < 1) throw ConfigError("table radius must be at least 1");
  const int d = spec.dim;
  KernelTable table;
  table.spec = spec;
  table.radius = radius;
  std::size_t total = 1;
  for (int a = 0; a < d; ++a) total *= static_cast<std::size_t>(table.side());
  table.values.assign(total, cplx{});

  const double r2max = static_cast<double>(radius) * radius;
  std::vector<std::size_t> ball;
  for (std::size_t i = 0; i < total; ++i) {
    const auto m = table.point(i);
    const double r2 = norm2(m);
    if (r2 > 0.0 && r2 <= r2max) ball.push_back(i);
  }

  const Factor factor = factor_of(spec.family);
  std::map<UKey, double> u_plus;                  // U + 1 per class
  std::map<std::vector<int>, double> u_direct;    // U + 1 per orbit
  if (factor == Factor::U || factor == Factor::UPlusOne) {
    std::set<UKey> keys;
    for (auto i : ball) keys.insert(u_key(table.point(i)));
    std::vector<UKey> list(keys.begin(), keys.end());
    std::vector<double> vals(list.size());
    parallel_for(list.size(), [&](std::size_t n) {
      try {
        vals[n] = u_plus_one(d, list[n], opt);
      } catch (const NumericalError& e) {
        std::ostringstream os;
        os << e.what() << " (U class r2=" << list[n].r2 << ", e=" << list[n].e << ")";
        throw NumericalError(os.str());
      }
    });
    for (std::size_t n = 0; n < list.size(); ++n) u_plus[list[n]] = vals[n];
  } else if (factor == Factor::UDirect) {
    std::set<std::vector<int>> orbits;
    for (auto i : ball) orbits.insert(orbit_key(table.point(i)));
    std::vector<std::vector<int>> list(orbits.begin(), orbits.end());
    std::vector<double> vals(list.size());
    parallel_for(list.size(), [&](std::size_t n) {
      std::vector<double> x(list[n].begin(), list[n].end());
      vals[n] = u_plus_one_direct(x, opt);
    });
    for (std::size_t n = 0; n < list.size(); ++n) u_direct[list[n]] = vals[n];
  }

  for (auto i : ball) {
    const auto m = table.point(i);
    cplx v{};
    for (const auto& t : spec.terms) v += t.coef * k_dis(t.j, t.k, m);
    switch (factor) {
      case Factor::One:
        break;
      case Factor::U:
        v *= u_plus.at(u_key(m)) - 1.0;
        break;
      case Factor::UPlusOne:
        v *= u_plus.at(u_key(m));
        break;
      case Factor::UDirect:
        v *= u_direct.at(orbit_key(m)) - 1.0;
        break;
    }
    table.values[i] = v;
  }

  if (factor == Factor::UPlusOne) {
    double env = 0.0;
    for (auto i : ball) {
      const auto m = table.point(i);
      const double r = std::sqrt(norm2(m));
      if (2.0 * r > radius)
        env = std::max(env, (std::abs(u_plus.at(u_key(m))) + opt.eps) * r);
    }
    const double rr = radius - 0.5 * std::sqrt(static_cast<double>(d));
    double tail = 0.0;
    for (const auto& t : spec.terms)
      tail += std::abs(t.coef) * riesz_constant(d) * env * angular_mass(d, t.j, t.k) / rr;
    table.tail_bound = tail;
    table.tail_is_heuristic = true;
  } else {
    table.tail_bound = std::numeric_limits<double>::infinity();
  }
  return table;
}

L1Report j_l1_norm(int j, int k, int d, int radius, const UOptions& opt) {
  check_indices(j, k, d);
  if (radius < 1) throw ConfigError("radius must be at least 1");
  const KernelTable t = build_table(KernelSpec::single(Family::Corrector, d, j, k), radius, opt);
  L1Report rep;
  for (const auto& v : t.values) rep.partial += std::abs(v);
  rep.tail_bound = t.tail_bound;
  const double rr = radius - 0.5 * std::sqrt(static_cast<double>(d));
  rep.envelope = t.tail_bound * rr / (riesz_constant(d) * angular_mass(d, j, k));
  return rep;
}

}  // namespace riesz
