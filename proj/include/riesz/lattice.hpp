#pragma once

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "riesz/fft.hpp"
#include "riesz/kernels.hpp"

namespace riesz {

/// Finitely supported function on Z^d stored densely on the centered box
/// prod_i [-half_i, half_i] (row-major, first axis slowest).
struct LatticeFunction {
  int dim = 0;
  std::vector<int> half;
  std::vector<cplx> values;

  static LatticeFunction zeros(std::vector<int> half);
  static LatticeFunction cube(int dim, int half_width);
  /// Unit mass at the origin of the cube [-h, h]^d.
  static LatticeFunction delta(int dim, int half_width);

  std::size_t size() const { return values.size(); }
  std::size_t index(std::span<const int> n) const;
  bool contains(std::span<const int> n) const;
  cplx at(std::span<const int> n) const;
  std::vector<int> point(std::size_t flat) const;

  double lp_norm(double p) const;
  bool is_real(double tol = 0.0) const;
};

/// Copies f onto the box `half`, cropping or zero-extending.
LatticeFunction restrict_to(const LatticeFunction& f, std::vector<int> half);
/// g(n) = f(n - s) on a box enlarged by |s_i| per axis.
LatticeFunction translate(const LatticeFunction& f, std::span<const int> s);
/// sum_n f(n) conj(g(n)).
cplx inner(const LatticeFunction& f, const LatticeFunction& g);

enum class ApplyMethod { Auto, Direct, Fft };

/// (K * f)(n) = sum_m K(m) f(n - m) on the box enlarged by the table radius.
/// The FFT path pads every axis to a fast length at least as long as the
/// linear convolution, so no wrap-around enters.
LatticeFunction apply_kernel(const KernelTable& table, const LatticeFunction& f,
                             ApplyMethod method = ApplyMethod::Auto);

/// Applies every term of a composite spec through its own table and sums.
LatticeFunction apply_composite(const KernelSpec& spec, int radius,
                                const LatticeFunction& f,
                                const UOptions& opt = {},
                                ApplyMethod method = ApplyMethod::Auto);

/// Table of the adjoint kernel, conj(K(-m)).
KernelTable adjoint_table(const KernelTable& table);

/// The compression P T P of the convolution operator to a fixed box P.
/// Kernel entries beyond twice the box half-width never couple two points of
/// the box and are dropped; the circular FFT size (>= 4h+1 per axis) then
/// reproduces the compression exactly. One instance is not thread safe.
class BoxOperator {
 public:
  BoxOperator(const KernelTable& table, std::vector<int> half);

  const std::vector<int>& half() const { return half_; }
  int dim() const { return static_cast<int>(half_.size()); }
  std::size_t box_size() const { return box_size_; }

  /// Inputs and outputs are dense box arrays in LatticeFunction order.
  void apply(std::span<const cplx> f, std::span<cplx> out) const;
  void apply_adjoint(std::span<const cplx> f, std::span<cplx> out) const;

  LatticeFunction apply(const LatticeFunction& f) const;
  LatticeFunction apply_adjoint(const LatticeFunction& f) const;

 private:
  void convolve(const std::vector<cplx>& spectrum, std::span<const cplx> f,
                std::span<cplx> out) const;
  std::vector<int> half_;
  std::vector<int> n_;
  std::size_t box_size_ = 0;
  std::vector<cplx> spec_;      // FFT of the folded kernel
  std::vector<cplx> spec_adj_;  // FFT of the folded adjoint kernel
  std::unique_ptr<FftPlan> plan_;
};

/// Closed-form test function on R^d:
///   F(x) = amplitude * prod_i (x_i - c_i)^{a_i} * exp(-|x - c|^2 / (2 sigma^2)).
/// The Fourier transform is available for a_i in {0, 1}.
struct SmoothSampler {
  std::vector<double> center;
  double sigma = 1.0;
  double amplitude = 1.0;
  std::vector<int> powers;  // empty means all zero

  static SmoothSampler gaussian(std::vector<double> center, double sigma);

  int dim() const { return static_cast<int>(center.size()); }
  double operator()(std::span<const double> x) const;
  /// Radius about the origin outside which |F| < 1e-300.
  double support_radius() const;
  /// F^(xi) = int F(x) exp(-2 pi i x.xi) dx; ConfigError for a_i > 1.
  cplx fourier(std::span<const double> xi) const;
  bool has_fourier() const;
};

struct DilateOptions {
  /// Sum over |eps m| <= |center| + sigmas * sigma.
  double sigmas = 6.0;
};

/// sum_m K(m) F(x - eps m) over the truncation ball. Throws ConfigError when
/// the table radius does not cover the ball.
double dilated_apply(const KernelTable& table, const SmoothSampler& F, double eps,
                     std::span<const double> x, const DilateOptions& opt = {});

struct OracleResult {
  double value = 0.0;
  double error = 0.0;
};

/// R^{(jk)}F(x) as the inverse Fourier integral of -xi_j xi_k/|xi|^2 F^(xi),
/// in polar coordinates (d = 2): trapezoid rule in angle, adaptive
/// Gauss-Legendre in radius. No node sits at xi = 0.
OracleResult classical_riesz_oracle(int j, int k, const SmoothSampler& F,
                                    std::span<const double> x);

}  // namespace riesz
