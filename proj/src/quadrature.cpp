#include "riesz/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <sstream>

#include "riesz/errors.hpp"

namespace riesz {
namespace {

// Golub-Welsch: nodes are the eigenvalues of the Jacobi matrix, weights are
// mu0 times the squared first components of the eigenvectors.
Rule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& off,
                  double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw NumericalError("Golub-Welsch eigen-decomposition failed");
  const auto n = diag.size();
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    r.nodes[i] = solver.eigenvalues()(i);
    const double v = solver.eigenvectors()(0, i);
    r.weights[i] = mu0 * v * v;
  }
  return r;
}

Rule make_legendre(std::size_t n) {
  // Newton on P_n for accuracy beyond the eigen-solver.
  Rule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(M_PI * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double p2 =
            ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.nodes[n - 1 - i] = x;
    r.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return r;
}

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

const Rule& gauss_legendre(std::size_t n) {
  if (n == 0) throw ConfigError("gauss_legendre: n must be positive");
  static std::mutex mu;
  static std::map<std::size_t, Rule> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_legendre(n)).first;
  return it->second;
}

Rule gauss_hermite(std::size_t n) {
  if (n == 0) throw ConfigError("gauss_hermite: n must be positive");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  Eigen::VectorXd off(static_cast<Eigen::Index>(n) - 1);
  for (Eigen::Index i = 1; i < static_cast<Eigen::Index>(n); ++i)
    off(i - 1) = std::sqrt(static_cast<double>(i) / 2.0);
  return golub_welsch(diag, off, std::sqrt(M_PI));
}

Rule gauss_laguerre(std::size_t n, double alpha) {
  if (n == 0) throw ConfigError("gauss_laguerre: n must be positive");
  if (!(alpha > -1.0)) throw ConfigError("gauss_laguerre: alpha must exceed -1");
  const auto N = static_cast<Eigen::Index>(n);
  Eigen::VectorXd diag(N);
  Eigen::VectorXd off(N - 1);
  for (Eigen::Index i = 0; i < N; ++i) diag(i) = 2.0 * i + alpha + 1.0;
  for (Eigen::Index i = 1; i < N; ++i)
    off(i - 1) = std::sqrt(static_cast<double>(i) * (i + alpha));
  return golub_welsch(diag, off, std::tgamma(alpha + 1.0));
}

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a,
                              double b, const AdaptiveOptions& opt,
                              const std::vector<double>& breaks) {
  const Rule& g = gauss_legendre(12);
  QuadResult res;
  auto rule = [&](double lo, double hi) {
    const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
    double s = 0.0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      s += g.weights[i] * f(c + h * g.nodes[i]);
    res.evaluations += g.nodes.size();
    return s * h;
  };
  auto make_panel = [&](double lo, double hi) {
    const double whole = rule(lo, hi);
    const double mid = 0.5 * (lo + hi);
    const double halves = rule(lo, mid) + rule(mid, hi);
    return Panel{lo, hi, halves, std::abs(halves - whole)};
  };

  std::vector<double> pts{a};
  for (double x : breaks)
    if (x > a && x < b) pts.push_back(x);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());

  std::priority_queue<Panel> heap;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    if (pts[i + 1] > pts[i]) heap.push(make_panel(pts[i], pts[i + 1]));

  auto totals = [&heap] {
    auto copy = heap;
    double v = 0.0, e = 0.0;
    while (!copy.empty()) {
      v += copy.top().value;
      e += copy.top().error;
      copy.pop();
    }
    return std::pair{v, e};
  };

  // Running sums are refreshed from scratch periodically to avoid drift.
  auto [value, error] = totals();
  std::size_t panels = heap.size();
  std::size_t since_refresh = 0;
  while (!heap.empty()) {
    const double target = std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
    if (error <= target) {
      res.converged = true;
      break;
    }
    if (panels >= opt.max_panels) break;
    const Panel p = heap.top();
    heap.pop();
    const double mid = 0.5 * (p.a + p.b);
    if (!(mid > p.a && mid < p.b)) {  // panel at floating-point resolution
      heap.push(Panel{p.a, p.b, p.value, 0.0});
      error -= p.error;
      continue;
    }
    const Panel l = make_panel(p.a, mid), r = make_panel(mid, p.b);
    heap.push(l);
    heap.push(r);
    ++panels;
    value += l.value + r.value - p.value;
    error += l.error + r.error - p.error;
    if (++since_refresh == 256) {
      std::tie(value, error) = totals();
      since_refresh = 0;
    }
  }
  std::tie(value, error) = totals();
  res.value = value;
  res.error = error;
  if (!res.converged)
    res.converged = error <= std::max(opt.abs_tol, opt.rel_tol * std::abs(value));
  if (!std::isfinite(value)) res.converged = false;
  if (!res.converged && opt.throw_on_failure) {
    std::ostringstream os;
    os << "adaptive quadrature on [" << a << ", " << b
       << "] did not converge: error estimate " << error << " after " << panels
       << " panels";
    throw NumericalError(os.str());
  }
  return res;
}

}  // namespace riesz
