#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "riesz/kernels.hpp"

namespace riesz {

/// How the truncated multiplier series is summed. Sharp truncation of the
/// ball keeps a Gibbs overshoot that does not shrink with R; the Gaussian
/// weights exp(-|m|^2 / (2 sigma^2)) have a positive periodized transform, so
/// the Gauss mean of the multiplier is an average of its values and never
/// exceeds the true supremum.
enum class Summation { Sharp, Gauss };

struct MultiplierOptions {
  int resolution = 512;
  Summation summation = Summation::Sharp;
  /// Gauss width as a fraction of the table radius.
  double gauss_sigma_fraction = 0.2;
};

/// Multiplier values on the grid xi_i = -1/2 + k_i / resolution of
/// Q = [-1/2, 1/2)^d (row-major, first axis slowest).
struct MultiplierGrid {
  int dim = 0;
  int resolution = 0;
  int radius = 0;
  Summation summation = Summation::Sharp;
  double gauss_sigma = 0.0;
  /// Set when the kernel is not absolutely summable, i.e. the grid is a
  /// partial sum of a conditionally convergent series.
  bool tail_flag = false;
  std::vector<cplx> values;

  std::vector<double> xi(std::size_t flat) const;
  cplx at_origin() const;
};

/// Weight applied to the table entry at m.
double summation_weight(const MultiplierOptions& opt, int radius, std::span<const int> m);

/// m_R(xi) = sum_{0<|m|<=R} w(m) K(m) exp(-2 pi i m.xi) by FFT. The table is
/// folded modulo the grid size first, which is exact at grid points for any
/// resolution.
MultiplierGrid multiplier_eval(const KernelTable& table, const MultiplierOptions& opt = {});

/// Direct phase sum at an arbitrary xi.
cplx multiplier_at(const KernelTable& table, std::span<const double> xi,
                   const MultiplierOptions& opt = {});

struct SupResult {
  double grid_max = 0.0;
  double value = 0.0;   // refined
  std::vector<double> argmax;
};

/// Grid maximum of |m|, then golden-section coordinate refinement of the
/// largest local maxima with direct phase sums. Candidates come from `grid`
/// and from an oversampled grid with spacing about 1/(4R) (at most 2^24
/// points), so the Gibbs peak of a sharp ball sum near |xi| ~ 1/R is not
/// stepped over.
SupResult sup_norm(const KernelTable& table, const MultiplierGrid& grid,
                   int refine_iterations = 3, int candidates = 8);

/// sqrt of the top eigenvalue of (P T P)^* (P T P) on the box [-h, h]^d by
/// power iteration from a seeded random start.
double l2_norm_power_iteration(const KernelTable& table, int half_width, int iters,
                               std::uint64_t seed, double rel_tol = 1e-12);

}  // namespace riesz
