#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "riesz/u_function.hpp"

namespace riesz {

using cplx = std::complex<double>;

/// c_d = pi^{-d/2} Gamma((d+2)/2).
double riesz_constant(int d);

/// Indices j, k are 1-based. All lattice kernels vanish at m = 0.
double k_dis(int j, int k, std::span<const int> m);
double k_prob(int j, int k, std::span<const int> m, const UOptions& opt = {});
double j_kernel(int j, int k, std::span<const int> m, const UOptions& opt = {});

/// Continuous kernel: -c_d x_j x_k / |x|^{d+2} inside the unit ball and
/// U(x) c_d x_j x_k / |x|^{d+2} outside, with U from the direct integral.
double k_continuous(int j, int k, std::span<const double> x,
                    const UOptions& opt = {});

enum class BAVariant { Discrete, Probabilistic, Corrector };
/// Beurling-Ahlfors kernels on Z^2.
cplx ba_kernel(BAVariant variant, std::span<const int> m, const UOptions& opt = {});

enum class Family {
  ClassicalDiscrete,
  Probabilistic,
  Corrector,
  Continuous,
  BADiscrete,
  BAProbabilistic,
  BACorrector,
};

std::string to_string(Family f);
Family family_from_string(const std::string& s);
bool is_ba(Family f);

/// coef * R^{(jk)} in a linear combination.
struct KernelTerm {
  cplx coef{1.0, 0.0};
  int j = 1;
  int k = 2;
};

/// Which operator a table represents. BA families ignore `terms`.
struct KernelSpec {
  Family family = Family::ClassicalDiscrete;
  int dim = 2;
  std::vector<KernelTerm> terms{KernelTerm{}};

  static KernelSpec single(Family f, int dim, int j, int k, double coef = 1.0);
  /// (j,j) - (k,k).
  static KernelSpec difference(Family f, int dim, int j, int k);
  static KernelSpec beurling_ahlfors(Family f);

  void validate() const;
  std::string describe() const;
};

/// Kernel values on the cube [-R, R]^d (row-major, first axis slowest), zero
/// outside the Euclidean ball |m| <= R and at the origin.
struct KernelTable {
  KernelSpec spec;
  int radius = 0;
  std::vector<cplx> values;
  /// Bound on the l1 mass beyond R. Infinite for families whose kernel is
  /// not absolutely summable; heuristic (see tail_is_heuristic) otherwise.
  double tail_bound = 0.0;
  bool tail_is_heuristic = false;

  int dim() const { return spec.dim; }
  int side() const { return 2 * radius + 1; }
  std::size_t index(std::span<const int> m) const;
  bool contains(std::span<const int> m) const;
  cplx at(std::span<const int> m) const;
  /// Lattice point at a flat index.
  std::vector<int> point(std::size_t flat) const;
  bool is_real(double tol = 0.0) const;
};

/// Fills a table. U classes are computed once each (in parallel) and then
/// combined; the result does not depend on the thread count.
KernelTable build_table(const KernelSpec& spec, int radius, const UOptions& opt = {});

struct L1Report {
  double partial = 0.0;
  double tail_bound = 0.0;      // heuristic, see j_l1_norm
  double envelope = 0.0;        // max over R/2 < |m| <= R of (|U+1| + eps)|m|
  bool tail_is_heuristic = true;
};

/// sum_{0<|m|<=R} |J^{(jk)}(m)| and a tail estimate obtained by extending the
/// observed |U+1| <= C/|m| envelope beyond R. Not a rigorous bound.
L1Report j_l1_norm(int j, int k, int d, int radius, const UOptions& opt = {});

}  // namespace riesz
