#include "riesz/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "riesz/errors.hpp"
#include "riesz/quadrature.hpp"

namespace riesz {
namespace {

std::size_t box_volume(const std::vector<int>& half) {
  std::size_t n = 1;
  for (int h : half) n *= static_cast<std::size_t>(2 * h + 1);
  return n;
}

std::size_t nonzeros(const std::vector<cplx>& v) {
  return static_cast<std::size_t>(
      std::count_if(v.begin(), v.end(), [](const cplx& z) { return z != cplx{}; }));
}

// Row-major flat index of a point on a grid with the given axis lengths,
// coordinates taken modulo each length.
std::size_t wrap_index(std::span<const int> p, const std::vector<int>& n) {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < n.size(); ++a) {
    int v = p[a] % n[a];
    if (v < 0) v += n[a];
    idx = idx * static_cast<std::size_t>(n[a]) + static_cast<std::size_t>(v);
  }
  return idx;
}

}  // namespace

LatticeFunction LatticeFunction::zeros(std::vector<int> half) {
  if (half.empty()) throw ConfigError("lattice function needs a dimension");
  for (int h : half)
    if (h < 0) throw ConfigError("box half-widths must be nonnegative");
  LatticeFunction f;
  f.dim = static_cast<int>(half.size());
  f.values.assign(box_volume(half), cplx{});
  f.half = std::move(half);
  return f;
}

LatticeFunction LatticeFunction::cube(int dim, int half_width) {
  if (dim < 1) throw ConfigError("dimension must be positive");
  return zeros(std::vector<int>(static_cast<std::size_t>(dim), half_width));
}

LatticeFunction LatticeFunction::delta(int dim, int half_width) {
  LatticeFunction f = cube(dim, half_width);
  f.values[f.size() / 2] = 1.0;
  return f;
}

std::size_t LatticeFunction::index(std::span<const int> n) const {
  std::size_t idx = 0;
  for (std::size_t a = 0; a < half.size(); ++a)
    idx = idx * static_cast<std::size_t>(2 * half[a] + 1) +
          static_cast<std::size_t>(n[a] + half[a]);
  return idx;
}

bool LatticeFunction::contains(std::span<const int> n) const {
  if (n.size() != half.size()) return false;
  for (std::size_t a = 0; a < half.size(); ++a)
    if (n[a] < -half[a] || n[a] > half[a]) return false;
  return true;
}

cplx LatticeFunction::at(std::span<const int> n) const {
  return contains(n) ? values[index(n)] : cplx{};
}

std::vector<int> LatticeFunction::point(std::size_t flat) const {
  std::vector<int> n(half.size());
  for (std::size_t a = half.size(); a-- > 0;) {
    const auto s = static_cast<std::size_t>(2 * half[a] + 1);
    n[a] = static_cast<int>(flat % s) - half[a];
    flat /= s;
  }
  return n;
}

double LatticeFunction::lp_norm(double p) const {
  if (!(p >= 1.0)) throw ConfigError("lp_norm needs p >= 1");
  double mx = 0.0;
  for (const auto& v : values) mx = std::max(mx, std::abs(v));
  if (mx == 0.0) return 0.0;
  if (std::isinf(p)) return mx;
  double s = 0.0;
  for (const auto& v : values) s += std::pow(std::abs(v) / mx, p);
  return mx * std::pow(s, 1.0 / p);
}

bool LatticeFunction::is_real(double tol) const {
  for (const auto& v : values)
    if (std::abs(v.imag()) > tol) return false;
  return true;
}

LatticeFunction restrict_to(const LatticeFunction& f, std::vector<int> half) {
  if (static_cast<int>(half.size()) != f.dim) throw ConfigError("dimension mismatch");
  LatticeFunction g = LatticeFunction::zeros(std::move(half));
  for (std::size_t i = 0; i < g.size(); ++i) g.values[i] = f.at(g.point(i));
  return g;
}

LatticeFunction translate(const LatticeFunction& f, std::span<const int> s) {
  if (static_cast<int>(s.size()) != f.dim) throw ConfigError("dimension mismatch");
  std::vector<int> half = f.half;
  for (std::size_t a = 0; a < half.size(); ++a) half[a] += std::abs(s[a]);
  LatticeFunction g = LatticeFunction::zeros(std::move(half));
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto n = f.point(i);
    for (std::size_t a = 0; a < n.size(); ++a) n[a] += s[a];
    g.values[g.index(n)] = f.values[i];
  }
  return g;
}

cplx inner(const LatticeFunction& f, const LatticeFunction& g) {
  if (f.dim != g.dim) throw ConfigError("dimension mismatch");
  cplx s{};
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f.values[i] == cplx{}) continue;
    s += f.values[i] * std::conj(g.at(f.point(i)));
  }
  return s;
}

LatticeFunction apply_kernel(const KernelTable& table, const LatticeFunction& f,
                             ApplyMethod method) {
  if (table.dim() != f.dim) {
    std::ostringstream os;
    os << "apply_kernel: table dimension " << table.dim() << " vs function dimension "
       << f.dim;
    throw ConfigError(os.str());
  }
  const int d = f.dim;
  const int R = table.radius;
  std::vector<int> out_half = f.half;
  for (int& h : out_half) h += R;
  LatticeFunction out = LatticeFunction::zeros(out_half);

  if (method == ApplyMethod::Auto) {
    const double work = static_cast<double>(nonzeros(f.values)) *
                        static_cast<double>(nonzeros(table.values));
    method = work <= 4e6 ? ApplyMethod::Direct : ApplyMethod::Fft;
  }

  if (method == ApplyMethod::Direct) {
    std::vector<std::size_t> kidx;
    for (std::size_t i = 0; i < table.values.size(); ++i)
      if (table.values[i] != cplx{}) kidx.push_back(i);
    std::vector<std::vector<int>> kpts;
    kpts.reserve(kidx.size());
    for (auto i : kidx) kpts.push_back(table.point(i));
    std::vector<int> q(static_cast<std::size_t>(d));
    for (std::size_t i = 0; i < f.size(); ++i) {
      const cplx v = f.values[i];
      if (v == cplx{}) continue;
      const auto n = f.point(i);
      for (std::size_t t = 0; t < kidx.size(); ++t) {
        for (int a = 0; a < d; ++a) q[a] = n[a] + kpts[t][a];
        out.values[out.index(q)] += table.values[kidx[t]] * v;
      }
    }
    return out;
  }

  std::vector<int> dims(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    dims[a] = static_cast<int>(fast_fft_length(static_cast<std::size_t>(2 * out_half[a] + 1)));
  FftPlan plan(dims);
  std::vector<cplx> kspec(plan.size());
  // Array offsets: f at n + h, the kernel at m + R, the output at q + h + R.
  std::fill(plan.data(), plan.data() + plan.size(), cplx{});
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    if (table.values[i] == cplx{}) continue;
    auto m = table.point(i);
    for (int& v : m) v += R;
    plan.data()[wrap_index(m, dims)] = table.values[i];
  }
  plan.forward();
  std::copy(plan.data(), plan.data() + plan.size(), kspec.begin());
  std::fill(plan.data(), plan.data() + plan.size(), cplx{});
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto n = f.point(i);
    for (int a = 0; a < d; ++a) n[a] += f.half[a];
    plan.data()[wrap_index(n, dims)] = f.values[i];
  }
  plan.forward();
  for (std::size_t i = 0; i < plan.size(); ++i) plan.data()[i] *= kspec[i];
  plan.backward();
  const double scale = 1.0 / static_cast<double>(plan.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    auto q = out.point(i);
    for (int a = 0; a < d; ++a) q[a] += out_half[a];
    out.values[i] = plan.data()[wrap_index(q, dims)] * scale;
  }
  return out;
}

LatticeFunction apply_composite(const KernelSpec& spec, int radius,
                                const LatticeFunction& f, const UOptions& opt,
                                ApplyMethod method) {
  spec.validate();
  LatticeFunction sum;
  bool first = true;
  for (const auto& term : spec.terms) {
    KernelSpec single = spec;
    single.terms = {KernelTerm{cplx(1.0, 0.0), term.j, term.k}};
    const KernelTable t = build_table(single, radius, opt);
    LatticeFunction part = apply_kernel(t, f, method);
    for (auto& v : part.values) v *= term.coef;
    if (first) {
      sum = std::move(part);
      first = false;
    } else {
      for (std::size_t i = 0; i < sum.size(); ++i) sum.values[i] += part.values[i];
    }
  }
  return sum;
}

KernelTable adjoint_table(const KernelTable& table) {
  KernelTable adj = table;
  const std::size_t n = table.values.size();
  // The cube is symmetric, so -m sits at the mirrored flat index.
  for (std::size_t i = 0; i < n; ++i) adj.values[i] = std::conj(table.values[n - 1 - i]);
  return adj;
}

BoxOperator::BoxOperator(const KernelTable& table, std::vector<int> half)
    : half_(std::move(half)) {
  if (static_cast<int>(half_.size()) != table.dim()) throw ConfigError("dimension mismatch");
  const int d = dim();
  box_size_ = box_volume(half_);
  n_.resize(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a)
    n_[a] = static_cast<int>(fast_fft_length(static_cast<std::size_t>(4 * half_[a] + 1)));
  plan_ = std::make_unique<FftPlan>(n_);
  auto fold = [&](bool adjoint) {
    cplx* buf = plan_->data();
    std::fill(buf, buf + plan_->size(), cplx{});
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      const cplx v = table.values[i];
      if (v == cplx{}) continue;
      auto m = table.point(i);
      bool inside = true;
      for (int a = 0; a < d; ++a) inside = inside && std::abs(m[a]) <= 2 * half_[a];
      if (!inside) continue;
      if (adjoint)
        for (int& c : m) c = -c;
      buf[wrap_index(m, n_)] = adjoint ? std::conj(v) : v;
    }
    plan_->forward();
    return std::vector<cplx>(buf, buf + plan_->size());
  };
  spec_ = fold(false);
  spec_adj_ = fold(true);
}

void BoxOperator::convolve(const std::vector<cplx>& spectrum, std::span<const cplx> f,
                           std::span<cplx> out) const {
  if (f.size() != box_size_ || out.size() != box_size_)
    throw ConfigError("BoxOperator: array size does not match the box");
  const int d = dim();
  cplx* buf = plan_->data();
  std::fill(buf, buf + plan_->size(), cplx{});
  std::vector<int> n(static_cast<std::size_t>(d));
  auto next = [&] {
    for (int a = d - 1; a >= 0; --a) {
      if (++n[a] <= half_[a]) return;
      n[a] = -half_[a];
    }
  };
  for (int a = 0; a < d; ++a) n[a] = -half_[a];
  for (std::size_t i = 0; i < box_size_; ++i, next()) buf[wrap_index(n, n_)] = f[i];
  plan_->forward();
  for (std::size_t i = 0; i < plan_->size(); ++i) buf[i] *= spectrum[i];
  plan_->backward();
  const double scale = 1.0 / static_cast<double>(plan_->size());
  for (int a = 0; a < d; ++a) n[a] = -half_[a];
  for (std::size_t i = 0; i < box_size_; ++i, next()) out[i] = buf[wrap_index(n, n_)] * scale;
}

void BoxOperator::apply(std::span<const cplx> f, std::span<cplx> out) const {
  convolve(spec_, f, out);
}

void BoxOperator::apply_adjoint(std::span<const cplx> f, std::span<cplx> out) const {
  convolve(spec_adj_, f, out);
}

LatticeFunction BoxOperator::apply(const LatticeFunction& f) const {
  const LatticeFunction g = f.half == half_ ? f : restrict_to(f, half_);
  LatticeFunction out = LatticeFunction::zeros(half_);
  apply(std::span<const cplx>(g.values), std::span<cplx>(out.values));
  return out;
}

LatticeFunction BoxOperator::apply_adjoint(const LatticeFunction& f) const {
  const LatticeFunction g = f.half == half_ ? f : restrict_to(f, half_);
  LatticeFunction out = LatticeFunction::zeros(half_);
  apply_adjoint(std::span<const cplx>(g.values), std::span<cplx>(out.values));
  return out;
}

SmoothSampler SmoothSampler::gaussian(std::vector<double> center, double sigma) {
  if (!(sigma > 0.0)) throw ConfigError("sampler width must be positive");
  SmoothSampler s;
  s.center = std::move(center);
  s.sigma = sigma;
  return s;
}

double SmoothSampler::operator()(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != dim()) throw ConfigError("dimension mismatch");
  double r2 = 0.0, poly = amplitude;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double y = x[i] - center[i];
    r2 += y * y;
    if (!powers.empty() && powers[i] > 0) poly *= std::pow(y, powers[i]);
  }
  return poly * std::exp(-r2 / (2.0 * sigma * sigma));
}

double SmoothSampler::support_radius() const {
  double c2 = 0.0;
  for (double v : center) c2 += v * v;
  int deg = 0;
  for (int a : powers) deg += a;
  // exp(-r^2/2) r^deg |amplitude| < 1e-300 well before r = 40 + deg.
  return std::sqrt(c2) + (40.0 + deg) * sigma;
}

bool SmoothSampler::has_fourier() const {
  for (int a : powers)
    if (a < 0 || a > 1) return false;
  return true;
}

cplx SmoothSampler::fourier(std::span<const double> xi) const {
  if (!has_fourier())
    throw ConfigError("closed-form Fourier transform needs monomial powers in {0, 1}");
  if (static_cast<int>(xi.size()) != dim()) throw ConfigError("dimension mismatch");
  const double s2 = sigma * sigma;
  double r2 = 0.0, phase = 0.0;
  cplx poly = amplitude;
  for (std::size_t i = 0; i < xi.size(); ++i) {
    r2 += xi[i] * xi[i];
    phase += center[i] * xi[i];
    if (!powers.empty() && powers[i] == 1) poly *= cplx(0.0, -2.0 * M_PI * s2 * xi[i]);
  }
  const double gauss = std::pow(2.0 * M_PI * s2, 0.5 * dim()) *
                       std::exp(-2.0 * M_PI * M_PI * s2 * r2);
  return poly * gauss * std::polar(1.0, -2.0 * M_PI * phase);
}

double dilated_apply(const KernelTable& table, const SmoothSampler& F, double eps,
                     std::span<const double> x, const DilateOptions& opt) {
  if (!(eps > 0.0)) throw ConfigError("dilation eps must be positive");
  if (table.dim() != F.dim() || static_cast<int>(x.size()) != F.dim())
    throw ConfigError("dimension mismatch");
  double c2 = 0.0, x2 = 0.0;
  for (int i = 0; i < F.dim(); ++i) {
    c2 += F.center[i] * F.center[i];
    x2 += x[i] * x[i];
  }
  const double rho = std::sqrt(x2) + std::sqrt(c2) + opt.sigmas * F.sigma;
  const double mmax = rho / eps;
  if (mmax > table.radius) {
    std::ostringstream os;
    os << "dilated_apply: truncation ball needs table radius " << std::ceil(mmax)
       << ", table has " << table.radius;
    throw ConfigError(os.str());
  }
  const int d = F.dim();
  std::vector<double> y(static_cast<std::size_t>(d));
  double sum = 0.0;
  for (std::size_t i = 0; i < table.values.size(); ++i) {
    const cplx k = table.values[i];
    if (k == cplx{}) continue;
    const auto m = table.point(i);
    double r2 = 0.0;
    for (int a = 0; a < d; ++a) r2 += static_cast<double>(m[a]) * m[a];
    if (r2 > mmax * mmax) continue;
    for (int a = 0; a < d; ++a) y[a] = x[a] - eps * m[a];
    sum += k.real() * F(y);
  }
  return sum;
}

OracleResult classical_riesz_oracle(int j, int k, const SmoothSampler& F,
                                    std::span<const double> x) {
  if (F.dim() != 2 || x.size() != 2)
    throw ConfigError("classical_riesz_oracle supports d = 2 only");
  if (j < 1 || j > 2 || k < 1 || k > 2) throw ConfigError("indices must be 1 or 2");
  if (!F.has_fourier()) throw ConfigError("sampler has no closed-form Fourier transform");
  const double s2 = F.sigma * F.sigma;
  int deg = 0;
  for (int a : F.powers) deg += a;
  // Beyond rho_max the Gaussian factor is below e^{-45}.
  const double rho_max = std::sqrt((45.0 + 2.0 * deg) / (2.0 * M_PI * M_PI * s2));
  const double spread = std::hypot(x[0], x[1]) + std::hypot(F.center[0], F.center[1]);
  const int base = 2 * static_cast<int>(std::ceil(2.0 * M_PI * rho_max * spread)) + 64;

  auto integrate = [&](int nphi, bool imag) {
    auto ring = [&](double rho) {
      cplx s{};
      for (int i = 0; i < nphi; ++i) {
        const double phi = (i + 0.5) * 2.0 * M_PI / nphi;
        const double w[2] = {std::cos(phi), std::sin(phi)};
        const double xi[2] = {rho * w[0], rho * w[1]};
        const double ph = 2.0 * M_PI * (x[0] * xi[0] + x[1] * xi[1]);
        s += -w[j - 1] * w[k - 1] * F.fourier(xi) * std::polar(1.0, ph);
      }
      s *= 2.0 * M_PI / nphi * rho;
      return imag ? s.imag() : s.real();
    };
    AdaptiveOptions opt;
    opt.abs_tol = 1e-14;
    opt.rel_tol = 1e-13;
    return integrate_adaptive(ring, 0.0, rho_max, opt);
  };
  const QuadResult a = integrate(base, false);
  const QuadResult b = integrate(2 * base, false);
  const QuadResult im = integrate(base, true);
  OracleResult r;
  r.value = b.value;
  r.error = std::abs(a.value - b.value) + b.error + std::abs(im.value);
  return r;
}

}  // namespace riesz
