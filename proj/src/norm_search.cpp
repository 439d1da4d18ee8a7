#include "riesz/norm_search.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/multiplier.hpp"

namespace riesz {
namespace {

void check_p(double p) {
  if (!(p > 1.0) || !std::isfinite(p)) {
    std::ostringstream os;
    os << "exponent p must satisfy 1 < p < inf, got " << p;
    throw ConfigError(os.str());
  }
}

double lp(std::span<const cplx> v, double p) {
  double mx = 0.0;
  for (const auto& z : v) mx = std::max(mx, std::abs(z));
  if (mx == 0.0) return 0.0;
  double s = 0.0;
  for (const auto& z : v) s += std::pow(std::abs(z) / mx, p);
  return mx * std::pow(s, 1.0 / p);
}

// psi_r(y) = |y|^{r-1} y/|y| after scaling y to unit max; psi(0) = 0.
void duality_map(std::span<const cplx> y, double r, std::span<cplx> out) {
  double mx = 0.0;
  for (const auto& z : y) mx = std::max(mx, std::abs(z));
  for (std::size_t i = 0; i < y.size(); ++i) {
    const double a = std::abs(y[i]);
    out[i] = a == 0.0 ? cplx{} : y[i] / a * std::pow(a / mx, r - 1.0);
  }
}

struct Run {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<cplx> witness;
};

Run ascend(const BoxOperator& op, std::vector<cplx> f, double p, int iters, double rel_tol) {
  const double q = p / (p - 1.0);
  const std::size_t n = f.size();
  std::vector<cplx> y(n), g(n);
  Run run;
  double prev = -1.0;
  for (int it = 0; it <= iters; ++it) {
    const double nf = lp(f, p);
    if (nf == 0.0 || !std::isfinite(nf)) break;
    for (auto& v : f) v /= nf;
    op.apply(f, y);
    const double r = lp(y, p);
    if (!std::isfinite(r)) throw NumericalError("norm ascent produced a non-finite value");
    if (r > run.value) {
      run.value = r;
      run.witness = f;
    }
    run.iterations = it;
    if (r == 0.0) break;
    if (prev >= 0.0 && std::abs(r - prev) <= rel_tol * r) {
      run.converged = true;
      break;
    }
    prev = r;
    if (it == iters) break;
    duality_map(y, p, y);
    op.apply_adjoint(y, g);
    duality_map(g, q, f);
  }
  return run;
}

}  // namespace

double burkholder_constant(double p) {
  check_p(p);
  return p >= 2.0 ? p - 1.0 : 1.0 / (p - 1.0);
}

std::pair<double, double> choi_bounds(double p) {
  const double b = burkholder_constant(p);
  const double pstar = b + 1.0;
  return {std::max(1.0, 0.5 * b), 0.5 * pstar};
}

double choi_alpha2() {
  const double l = std::log((1.0 + std::exp(-2.0)) / 2.0);
  const double r = std::exp(-2.0) / (1.0 + std::exp(-2.0));
  return l * l + 0.5 * l - 2.0 * r * r;
}

double choi_gamma_asymptotic(double p) {
  check_p(p);
  if (p < kChoiAsymptoticPMin) {
    std::ostringstream os;
    os << "Choi asymptotic is only used for p >= " << kChoiAsymptoticPMin << ", got " << p;
    throw ConfigError(os.str());
  }
  return 0.5 * p + 0.5 * std::log((1.0 + std::exp(-2.0)) / 2.0) + choi_alpha2() / p;
}

double conformal_bound(double p) {
  check_p(p);
  if (p < 2.0) throw ConfigError("conformal bound is stated for p >= 2");
  return std::sqrt(2.0 * p * (p - 1.0));
}

double lp_ratio(const KernelTable& table, const LatticeFunction& f, double p) {
  check_p(p);
  const BoxOperator op(table, f.half);
  std::vector<cplx> y(op.box_size());
  op.apply(f.values, y);
  const double nf = lp(f.values, p);
  return nf == 0.0 ? 0.0 : lp(y, p) / nf;
}

NormEstimate lp_lower_bound(const KernelTable& table, const NormOptions& opt) {
  check_p(opt.p);
  if (opt.half_width < 0) throw ConfigError("box half-width must be nonnegative");
  if (opt.iters < 1) throw ConfigError("iters must be at least 1");
  for (const auto& v : table.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("kernel table contains non-finite values");
  const int d = table.dim();
  const std::vector<int> half(static_cast<std::size_t>(d), opt.half_width);
  const BoxOperator op(table, half);
  const LatticeFunction shape = LatticeFunction::zeros(half);
  const std::size_t n = op.box_size();
  const bool real = table.is_real();

  std::vector<std::pair<std::string, std::vector<cplx>>> starts;
  {
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cplx> f(n);
    for (auto& v : f) v = real ? cplx(u(rng), 0.0) : cplx(u(rng), u(rng));
    starts.emplace_back("random", std::move(f));
  }
  {
    std::vector<cplx> f(n);
    f[n / 2] = 1.0;
    starts.emplace_back("delta", std::move(f));
  }
  {
    std::vector<double> xi = opt.plane_wave_xi;
    if (xi.empty()) {
      MultiplierOptions mo;
      mo.resolution = d == 2 ? 256 : 32;
      const MultiplierGrid grid = multiplier_eval(table, mo);
      xi = sup_norm(table, grid, 0).argmax;
    }
    if (static_cast<int>(xi.size()) != d) throw ConfigError("plane-wave frequency dimension mismatch");
    std::vector<cplx> f(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto m = shape.point(i);
      double ph = 0.0;
      for (int a = 0; a < d; ++a) ph += 2.0 * M_PI * m[a] * xi[a];
      f[i] = real ? cplx(std::cos(ph), 0.0) : std::polar(1.0, ph);
    }
    starts.emplace_back("plane_wave", std::move(f));
  }
  if (opt.warm_start != nullptr) {
    if (opt.warm_start->dim != d) throw ConfigError("warm start dimension mismatch");
    starts.emplace_back("warm_start", restrict_to(*opt.warm_start, half).values);
  }

  NormEstimate best;
  best.spec = table.spec.describe();
  best.p = opt.p;
  best.half_width = opt.half_width;
  best.radius = table.radius;
  best.seed = opt.seed;
  best.value = -1.0;
  for (auto& [label, f] : starts) {
    Run run = ascend(op, std::move(f), opt.p, opt.iters, opt.rel_tol);
    if (run.value > best.value) {
      best.value = run.value;
      best.iterations = run.iterations;
      best.converged = run.converged;
      best.start = label;
      best.witness = shape;
      if (!run.witness.empty()) best.witness.values = std::move(run.witness);
    }
  }
  best.value = std::max(best.value, 0.0);
  return best;
}

std::vector<NormEstimate> lp_lower_bound_ladder(const KernelTable& table,
                                                const std::vector<int>& half_widths,
                                                NormOptions opt) {
  std::vector<NormEstimate> out;
  for (int h : half_widths) {
    opt.half_width = h;
    opt.warm_start = out.empty() ? nullptr : &out.back().witness;
    NormEstimate e = lp_lower_bound(table, opt);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace riesz
