#include "riesz/theta.hpp"

#include <cmath>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {
namespace {

constexpr double kTwoPi = 2.0 * M_PI;
constexpr double kTwoPiSq = 2.0 * M_PI * M_PI;

void check_t(double t) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    std::ostringstream os;
    os << "theta: time parameter must be positive and finite, got " << t;
    throw ConfigError(os.str());
  }
}

[[noreturn]] void fail(const char* what, double x, double t) {
  std::ostringstream os;
  os.precision(17);
  os << what << ": tolerance not reached within max_terms at x=" << x
     << ", t=" << t;
  throw NumericalError(os.str());
}

// Accumulates sum_{n>=1} term(n) where |term(n)| <= bound(n) and
// bound(n+1)/bound(n) <= ratio(n) with ratio nonincreasing in n.
template <class Term, class Bound, class Ratio>
SeriesValue sum_series(double head, Term term, Bound bound, Ratio ratio,
                       const SeriesTolerance& tol, const char* what, double x,
                       double t) {
  SeriesValue out;
  double s = head;
  std::size_t n = 1;
  for (;; ++n) {
    const double b = bound(n);
    if (b < 0.25 * tol.eps) {
      const double r = ratio(n);
      if (r < 1.0) {
        out.truncation_bound = b / (1.0 - r);
        if (out.truncation_bound <= tol.eps) break;
      }
    }
    if (n > tol.max_terms) fail(what, x, t);
    s += term(n);
  }
  out.value = s;
  out.terms = n - 1;
  return out;
}

}  // namespace

double reduce_torus(double x) {
  double r = x - std::floor(x + 0.5);
  if (r >= 0.5) r -= 1.0;  // rounding at the upper edge
  return r;
}

SeriesValue theta_fourier(double x, double t, const SeriesTolerance& tol) {
  check_t(t);
  const double y = reduce_torus(x);
  return sum_series(
      1.0,
      [&](std::size_t n) {
        const double nd = static_cast<double>(n);
        return 2.0 * std::exp(-kTwoPiSq * nd * nd * t) * std::cos(kTwoPi * nd * y);
      },
      [&](std::size_t n) {
        const double nd = static_cast<double>(n);
        return 2.0 * std::exp(-kTwoPiSq * nd * nd * t);
      },
      [&](std::size_t n) {
        return std::exp(-kTwoPiSq * t * (2.0 * static_cast<double>(n) + 1.0));
      },
      tol, "theta_fourier", x, t);
}

SeriesValue theta_gaussian(double x, double t, const SeriesTolerance& tol) {
  check_t(t);
  const double y = reduce_torus(x);
  const double pref = 1.0 / std::sqrt(kTwoPi * t);
  // Pair k collects n = k and n = -k; both lie at distance >= k - 1/2.
  return sum_series(
      pref * std::exp(-y * y / (2.0 * t)),
      [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        const double a = y - kd, b = y + kd;
        return pref * (std::exp(-a * a / (2.0 * t)) + std::exp(-b * b / (2.0 * t)));
      },
      [&](std::size_t k) {
        const double d = static_cast<double>(k) - 0.5;
        return 2.0 * pref * std::exp(-d * d / (2.0 * t));
      },
      [&](std::size_t k) { return std::exp(-static_cast<double>(k) / t); }, tol,
      "theta_gaussian", x, t);
}

double theta(double x, double t, const SeriesTolerance& tol) {
  check_t(t);
  return t >= kThetaSwitch ? theta_fourier(x, t, tol).value
                           : theta_gaussian(x, t, tol).value;
}

double theta_minus_one(double x, double t, const SeriesTolerance& tol) {
  check_t(t);
  if (t < kThetaSwitch) return theta_gaussian(x, t, tol).value - 1.0;
  const double y = reduce_torus(x);
  return sum_series(
             0.0,
             [&](std::size_t n) {
               const double nd = static_cast<double>(n);
               return 2.0 * std::exp(-kTwoPiSq * nd * nd * t) *
                      std::cos(kTwoPi * nd * y);
             },
             [&](std::size_t n) {
               const double nd = static_cast<double>(n);
               return 2.0 * std::exp(-kTwoPiSq * nd * nd * t);
             },
             [&](std::size_t n) {
               return std::exp(-kTwoPiSq * t * (2.0 * static_cast<double>(n) + 1.0));
             },
             tol, "theta_minus_one", x, t)
      .value;
}

double log_theta(double x, double t, const SeriesTolerance& tol) {
  check_t(t);
  if (t >= kThetaSwitch) return std::log1p(theta_minus_one(x, t, tol));
  const double y = reduce_torus(x);
  // theta = (2 pi t)^{-1/2} e^{-y^2/2t} (1 + sum_{n != 0} e^{-(n^2 - 2 n y)/2t}),
  // and every exponent there is <= 0 because |y| <= 1/2.
  const SeriesValue rest = sum_series(
      0.0,
      [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        return std::exp(-(kd * kd - 2.0 * kd * y) / (2.0 * t)) +
               std::exp(-(kd * kd + 2.0 * kd * y) / (2.0 * t));
      },
      [&](std::size_t k) {
        const double kd = static_cast<double>(k);
        return 2.0 * std::exp(-kd * (kd - 1.0) / (2.0 * t));
      },
      [&](std::size_t k) { return std::exp(-static_cast<double>(k) / t); }, tol,
      "log_theta", x, t);
  return -0.5 * std::log(kTwoPi * t) - y * y / (2.0 * t) + std::log1p(rest.value);
}

double theta_dz(double x, double t, const SeriesTolerance& tol) {
  check_t(t);
  const double y = reduce_torus(x);
  if (t >= kThetaSwitch) {
    return sum_series(
               0.0,
               [&](std::size_t n) {
                 const double nd = static_cast<double>(n);
                 return -2.0 * kTwoPi * nd * std::exp(-kTwoPiSq * nd * nd * t) *
                        std::sin(kTwoPi * nd * y);
               },
               [&](std::size_t n) {
                 const double nd = static_cast<double>(n);
                 return 2.0 * kTwoPi * nd * std::exp(-kTwoPiSq * nd * nd * t);
               },
               [&](std::size_t n) {
                 const double nd = static_cast<double>(n);
                 return (nd + 1.0) / nd *
                        std::exp(-kTwoPiSq * t * (2.0 * nd + 1.0));
               },
               tol, "theta_dz", x, t)
        .value;
  }
  const double pref = 1.0 / std::sqrt(kTwoPi * t);
  return sum_series(
             -pref * y / t * std::exp(-y * y / (2.0 * t)),
             [&](std::size_t k) {
               const double kd = static_cast<double>(k);
               const double a = y - kd, b = y + kd;
               return -pref / t *
                      (a * std::exp(-a * a / (2.0 * t)) +
                       b * std::exp(-b * b / (2.0 * t)));
             },
             [&](std::size_t k) {
               const double kd = static_cast<double>(k);
               const double d = kd - 0.5;
               return 2.0 * pref * (kd + 0.5) / t * std::exp(-d * d / (2.0 * t));
             },
             [&](std::size_t k) {
               const double kd = static_cast<double>(k);
               return (kd + 1.5) / (kd + 0.5) * std::exp(-kd / t);
             },
             tol, "theta_dz", x, t)
      .value;
}

double gaussian_heat_1d(double x, double t) {
  check_t(t);
  return std::exp(-x * x / (2.0 * t)) / std::sqrt(kTwoPi * t);
}

double gaussian_heat(std::span<const double> x, double t) {
  check_t(t);
  double r2 = 0.0;
  for (double v : x) r2 += v * v;
  return std::pow(kTwoPi * t, -0.5 * static_cast<double>(x.size())) *
         std::exp(-r2 / (2.0 * t));
}

double periodic_heat(std::span<const double> x, double t,
                     const SeriesTolerance& tol) {
  double h = 1.0;
  for (double v : x) h *= theta(v, t, tol);
  return h;
}

double log_periodic_heat(std::span<const double> x, double t,
                         const SeriesTolerance& tol) {
  double s = 0.0;
  for (double v : x) s += log_theta(v, t, tol);
  return s;
}

double heat_lower_bound(std::span<const double> x, double t) {
  check_t(t);
  double r2 = 0.0;
  for (double v : x) {
    const double y = reduce_torus(v);
    r2 += y * y;
  }
  return std::pow(kTwoPi * t, -0.5 * static_cast<double>(x.size())) *
         std::exp(-r2 / (2.0 * t));
}

double q_minus_one(int j, double t, double eps) {
  if (j != 0 && j != 1) throw ConfigError("q_function: parity must be 0 or 1");
  check_t(t);
  if (!(eps > 0.0)) throw ConfigError("q_function: eps must be positive");
  const double shift = 0.5 * j;
  // The integrand is even in x.
  auto f = [&](double x) {
    return std::expm1(log_theta(x, 0.5 * t) - log_theta(x + shift, t));
  };
  AdaptiveOptions opt;
  opt.abs_tol = 0.5 * eps;
  opt.rel_tol = 1e-13;
  return 2.0 * integrate_adaptive(f, 0.0, 0.5, opt).value;
}

double q_function(int j, double t, double eps) {
  return 1.0 + q_minus_one(j, t, eps);
}

double voronoi_psi(std::span<const double> x) {
  constexpr double kTie = 1e-12;
  int ties = 0;
  for (double v : x) {
    const double a = std::abs(v);
    if (std::abs(a - 0.5) <= kTie * 0.5) {
      ++ties;
    } else if (a > 0.5) {
      return 0.0;
    }
  }
  return std::ldexp(1.0, -ties);
}

}  // namespace riesz
