#pragma once

#include <cstddef>
#include <span>

namespace riesz {

struct SeriesTolerance {
  double eps = 1e-15;        // absolute truncation target
  std::size_t max_terms = 64;
};

/// Truncated series value with the bound on the discarded tail.
struct SeriesValue {
  double value = 0.0;
  double truncation_bound = 0.0;
  std::size_t terms = 0;
};

/// Crossover between the Fourier and the Gaussian series, 1/(2 pi).
inline constexpr double kThetaSwitch = 0.15915494309189533577;

/// Reduces x to [-1/2, 1/2).
double reduce_torus(double x);

/// Fourier series 1 + 2 sum_n exp(-2 pi^2 n^2 t) cos(2 pi n x).
SeriesValue theta_fourier(double x, double t, const SeriesTolerance& tol = {});
/// Gaussian series (2 pi t)^{-1/2} sum_n exp(-(x - n)^2 / (2t)).
SeriesValue theta_gaussian(double x, double t, const SeriesTolerance& tol = {});

/// theta(x, t), choosing the faster series. Throws ConfigError for t <= 0 and
/// NumericalError when max_terms cannot reach tol.eps.
double theta(double x, double t, const SeriesTolerance& tol = {});
/// theta(x, t) - 1 without cancellation for large t.
double theta_minus_one(double x, double t, const SeriesTolerance& tol = {});
/// log theta(x, t); finite for every t > 0 (no underflow at small t).
double log_theta(double x, double t, const SeriesTolerance& tol = {});
/// d theta / dx.
double theta_dz(double x, double t, const SeriesTolerance& tol = {});

double gaussian_heat_1d(double x, double t);
double gaussian_heat(std::span<const double> x, double t);

/// H_t(x) = prod_k theta(x_k, t).
double periodic_heat(std::span<const double> x, double t,
                     const SeriesTolerance& tol = {});
double log_periodic_heat(std::span<const double> x, double t,
                         const SeriesTolerance& tol = {});

/// Lower bound (2 pi t)^{-d/2} exp(-|x|_Q^2 / (2t)) for H_t(x), where |x|_Q is
/// the distance from x to the nearest lattice point.
double heat_lower_bound(std::span<const double> x, double t);

/// q_j(t) = integral over [-1/2, 1/2] of theta(x, t/2) / theta(x + j/2, t).
/// `eps` is the absolute quadrature tolerance.
double q_function(int j, double t, double eps = 1e-10);
/// q_j(t) - 1, accurate when q_j is close to 1.
double q_minus_one(int j, double t, double eps = 1e-10);

/// Limit of P_t(x) / H_t(x) as t -> 0: 1 inside the Voronoi cell of the
/// origin, 1/k on a face shared by k nearest lattice points, 0 otherwise.
/// Distances equal within 1e-12 relative count as ties.
double voronoi_psi(std::span<const double> x);

}  // namespace riesz
