#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "riesz/kernels.hpp"
#include "riesz/lattice.hpp"

namespace riesz {

/// p* - 1 = max(p, p/(p-1)) - 1.
double burkholder_constant(double p);
/// max{1, (p*-1)/2} <= gamma(p) <= p*/2.
std::pair<double, double> choi_bounds(double p);
/// Large-p expansion p/2 + log((1+e^{-2})/2)/2 + alpha_2/p; requires p >= 6.
double choi_gamma_asymptotic(double p);
double choi_alpha2();
inline constexpr double kChoiAsymptoticPMin = 6.0;
/// sqrt(2 p (p - 1)) for p >= 2.
double conformal_bound(double p);

struct NormOptions {
  double p = 2.0;
  int half_width = 24;          // box [-h, h]^d
  int iters = 500;
  std::uint64_t seed = 1;
  double rel_tol = 1e-8;
  /// Plane-wave start frequency; empty selects the multiplier argmax.
  std::vector<double> plane_wave_xi;
  /// Extra start (e.g. the optimum of a smaller box), zero-extended.
  const LatticeFunction* warm_start = nullptr;
};

struct NormEstimate {
  std::string spec;
  double p = 2.0;
  int half_width = 0;
  int radius = 0;
  double value = 0.0;   // ||T f||_p / ||f||_p for the witness f
  int iterations = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  std::string start;    // which restart produced the witness
  LatticeFunction witness;
};

/// ||T f||_p / ||f||_p for the compression of T to f's box.
double lp_ratio(const KernelTable& table, const LatticeFunction& f, double p);

/// Lower bound on ||T||_{p->p} from ascent on the compression P T P:
///   f <- psi_q(T^* psi_p(T f)),  psi_r(y) = |y|^{r-1} y / |y|,  q = p/(p-1),
/// normalized in l^p (for p = 2 this is power iteration on T^*T). Restarts
/// from a seeded random f, the delta at the origin, a plane wave and the
/// optional warm start; the best achieved ratio is returned with its witness.
NormEstimate lp_lower_bound(const KernelTable& table, const NormOptions& opt);

/// Estimates on an increasing sequence of boxes, each warm-started from the
/// previous witness; the values are nondecreasing.
std::vector<NormEstimate> lp_lower_bound_ladder(const KernelTable& table,
                                                const std::vector<int>& half_widths,
                                                NormOptions opt);

}  // namespace riesz
