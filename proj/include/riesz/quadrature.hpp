#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace riesz {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // estimated absolute error
  std::size_t evaluations = 0;
  bool converged = false;
};

struct AdaptiveOptions {
  double abs_tol = 1e-12;
  double rel_tol = 0.0;
  std::size_t max_panels = 20000;
  /// Throw NumericalError instead of returning converged = false.
  bool throw_on_failure = true;
};

/// Nodes and weights of an n-point rule.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre on [-1, 1].
const Rule& gauss_legendre(std::size_t n);
/// Gauss-Hermite for weight exp(-x^2) on R.
Rule gauss_hermite(std::size_t n);
/// Generalized Gauss-Laguerre for weight x^alpha exp(-x) on (0, inf).
Rule gauss_laguerre(std::size_t n, double alpha);

/// Globally adaptive 12-point Gauss-Legendre over [a, b], with the initial
/// partition split at every point of `breaks` inside (a, b). The panel with
/// the largest error estimate is bisected until the summed estimate meets
/// max(abs_tol, rel_tol * |value|).
QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const AdaptiveOptions& opt = {},
                              const std::vector<double>& breaks = {});

}  // namespace riesz
