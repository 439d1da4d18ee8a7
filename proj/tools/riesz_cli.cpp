// Command-line front end. Every subcommand writes one JSON report (and CSV
// data where tabular) into --out, each headed by the resolved configuration.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "riesz/errors.hpp"
#include "riesz/io.hpp"
#include "riesz/kernels.hpp"
#include "riesz/lattice.hpp"
#include "riesz/monte_carlo.hpp"
#include "riesz/multiplier.hpp"
#include "riesz/norm_search.hpp"
#include "riesz/parallel.hpp"
#include "riesz/theta.hpp"
#include "riesz/u_function.hpp"

namespace fs = std::filesystem;
using riesz::io::Json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Common {
  std::string out = ".";
  unsigned threads = 0;
};

struct KernelArgs {
  std::string family = "classical_discrete";
  int d = 2;
  std::vector<int> jk{1, 2};
  double coef = 1.0;
  bool diff = false;
  int radius = 40;

  void add(CLI::App* c, int default_radius) {
    radius = default_radius;
    c->add_option("--family", family,
                  "classical_discrete, probabilistic, corrector, continuous, "
                  "ba_discrete, ba_probabilistic, ba_corrector")
        ->capture_default_str();
    c->add_option("--d", d, "Dimension")->capture_default_str();
    c->add_option("--jk", jk, "Kernel indices j k (1-based)")->expected(2)->capture_default_str();
    c->add_option("--coef", coef, "Scalar multiple of the kernel")->capture_default_str();
    c->add_flag("--diff", diff, "Use (j,j) - (k,k) instead of (j,k)");
    c->add_option("--R", radius, "Table radius")->capture_default_str();
  }

  riesz::KernelSpec spec() const {
    const riesz::Family f = riesz::family_from_string(family);
    if (riesz::is_ba(f)) {
      riesz::KernelSpec s = riesz::KernelSpec::beurling_ahlfors(f);
      if (d != 2) throw riesz::ConfigError("Beurling-Ahlfors families require --d 2");
      for (auto& t : s.terms) t.coef *= coef;
      return s;
    }
    riesz::KernelSpec s = diff ? riesz::KernelSpec::difference(f, d, jk[0], jk[1])
                               : riesz::KernelSpec::single(f, d, jk[0], jk[1], coef);
    if (diff)
      for (auto& t : s.terms) t.coef *= coef;
    return s;
  }

  Json config() const {
    return Json{{"family", family}, {"d", d},       {"jk", jk},
                {"coef", coef},     {"diff", diff}, {"R", radius}};
  }
};

Json base_config(const std::string& command, const Common& c) {
  return Json{{"command", command}, {"threads", c.threads}};
}

fs::path output_path(const Common& c, const std::string& name) {
  const fs::path dir(c.out);
  fs::create_directories(dir);
  return dir / name;
}

void write_json(const Common& c, const std::string& name, const Json& report) {
  const fs::path p = output_path(c, name);
  std::ofstream os(p);
  if (!os) throw riesz::ConfigError("cannot write " + p.string());
  os << report.dump(2) << '\n';
  std::cout << p.string() << '\n';
}

std::ofstream open_csv(const Common& c, const std::string& name) {
  const fs::path p = output_path(c, name);
  std::ofstream os(p);
  if (!os) throw riesz::ConfigError("cannot write " + p.string());
  std::cout << p.string() << '\n';
  return os;
}

// ---------------------------------------------------------------- commands

int cmd_kernel_table(const Common& c, const KernelArgs& k, const std::string& csv_name) {
  const riesz::KernelSpec spec = k.spec();
  const riesz::KernelTable t = riesz::build_table(spec, k.radius);
  Json cfg = base_config("kernel-table", c);
  cfg["kernel"] = k.config();
  {
    auto os = open_csv(c, csv_name);
    riesz::io::write_kernel_table_csv(os, t, cfg);
  }
  // Checks: K(-m) = K(m) for every term (second-order kernels are even), the
  // table is zero at the origin and outside the ball, and the probabilistic
  // entries divided by the discrete ones give U(m).
  double re_min = INFINITY, re_max = -INFINITY, even_res = 0.0, support_res = 0.0, ratio_res = 0.0;
  std::size_t nonzero = 0;
  const double r2max = double(k.radius) * k.radius;
  const bool prob = spec.family == riesz::Family::Probabilistic && spec.terms.size() == 1;
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    const auto m = t.point(i);
    double r2 = 0.0;
    for (int v : m) r2 += double(v) * v;
    const riesz::cplx v = t.values[i];
    std::vector<int> neg(m);
    for (int& x : neg) x = -x;
    even_res = std::max(even_res, std::abs(v - t.at(neg)));
    if (r2 == 0.0 || r2 > r2max) {
      support_res = std::max(support_res, std::abs(v));
      continue;
    }
    if (v != riesz::cplx{}) ++nonzero;
    re_min = std::min(re_min, v.real());
    re_max = std::max(re_max, v.real());
    if (prob) {
      const auto& term = spec.terms[0];
      const double kd = term.coef.real() * riesz::k_dis(term.j, term.k, m);
      if (kd != 0.0) ratio_res = std::max(ratio_res, std::abs(v.real() / kd - riesz::u_value(m)));
    }
  }
  Json summary{{"config", cfg},
               {"spec", riesz::io::to_json(spec)},
               {"nonzero", nonzero},
               {"re_min", re_min},
               {"re_max", re_max},
               {"even_residual", even_res},
               {"support_residual", support_res},
               {"tail_bound", std::isfinite(t.tail_bound) ? Json(t.tail_bound) : Json("inf")},
               {"tail_is_heuristic", t.tail_is_heuristic}};
  if (prob) summary["u_ratio_residual"] = ratio_res;
  const bool ok = even_res == 0.0 && support_res == 0.0 && ratio_res <= 1e-9;
  summary["checks_passed"] = ok;
  write_json(c, "kernel_table_summary.json", summary);
  return ok ? 0 : kExitNumerical;
}

Json mc_agreement(const Json& mc, double u) {
  const double mean = mc.at("mean").get<double>();
  const double se = mc.at("stderr").get<double>();
  const double z = se > 0 ? (mean - u) / se : (mean == u ? 0.0 : INFINITY);
  return Json{{"mc_mean", mean},
              {"mc_stderr", se},
              {"z", std::isfinite(z) ? Json(z) : Json("inf")},
              {"agree_3sigma", std::abs(z) <= 3.0}};
}

int cmd_u(const Common& c, const std::vector<int>& m, double eps, bool laguerre,
          const std::string& mc_report) {
  riesz::UOptions opt;
  opt.eps = eps;
  const int d = static_cast<int>(m.size());
  const riesz::UKey key = riesz::u_key(m);
  const double up1 = riesz::u_plus_one(d, key, opt);
  Json cfg = base_config("u", c);
  cfg["m"] = m;
  cfg["eps"] = eps;
  cfg["laguerre"] = laguerre;
  cfg["mc_report"] = mc_report;
  Json r{{"config", cfg},       {"m", m},         {"d", d},
         {"r2", key.r2},        {"e", key.e},     {"U", up1 - 1.0},
         {"U_plus_one", up1},   {"method", "adaptive_s_quadrature"}};
  if (laguerre) r["U_plus_one_laguerre"] = riesz::u_plus_one_laguerre(d, key);
  if (!mc_report.empty()) {
    std::ifstream is(mc_report);
    if (!is) throw riesz::ConfigError("cannot read " + mc_report);
    Json mc;
    try {
      mc = Json::parse(is);
    } catch (const Json::exception& e) {
      throw riesz::ConfigError(std::string("malformed MC report: ") + e.what());
    }
    if (mc.contains("report")) mc = mc["report"];
    if (mc.at("m").get<std::vector<int>>() != m)
      throw riesz::ConfigError("MC report is for a different m");
    r["mc_comparison"] = mc_agreement(mc, up1 - 1.0);
  }
  write_json(c, "u.json", r);
  return 0;
}

int cmd_u_direct(const Common& c, const std::vector<double>& x, double eps) {
  riesz::UOptions opt;
  opt.eps = eps;
  const double up1 = riesz::u_plus_one_direct(x, opt);
  Json cfg = base_config("u-direct", c);
  cfg["x"] = x;
  cfg["eps"] = eps;
  write_json(c, "u_direct.json", Json{{"config", cfg}, {"x", x}, {"U", up1 - 1.0},
                                      {"U_plus_one", up1}, {"method", "heat_kernel_direct"}});
  return 0;
}

int cmd_qplot(const Common& c, double t_min, double t_max, int points, double eps) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw riesz::ConfigError("need 0 < t-min < t-max");
  if (points < 2) throw riesz::ConfigError("need at least 2 points");
  std::vector<double> t(points), q0(points), q1(points);
  for (int i = 0; i < points; ++i) t[i] = t_min + (t_max - t_min) * i / (points - 1);
  riesz::parallel_for(static_cast<std::size_t>(points), [&](std::size_t i) {
    q0[i] = riesz::q_function(0, t[i], eps);
    q1[i] = riesz::q_function(1, t[i], eps);
  });
  Json cfg = base_config("qplot", c);
  cfg["t_min"] = t_min;
  cfg["t_max"] = t_max;
  cfg["points"] = points;
  cfg["eps"] = eps;
  auto os = open_csv(c, "qplot.csv");
  riesz::io::write_config_header(os, cfg);
  os << "t,q0,q1\n";
  for (int i = 0; i < points; ++i)
    os << riesz::io::fmt(t[i]) << ',' << riesz::io::fmt(q0[i]) << ',' << riesz::io::fmt(q1[i]) << '\n';
  return 0;
}

int cmd_multiplier(const Common& c, const KernelArgs& k, int resolution,
                   const std::string& summation, double sigma_fraction, int refine, bool grid_csv) {
  riesz::MultiplierOptions opt;
  opt.resolution = resolution;
  if (summation == "sharp") {
    opt.summation = riesz::Summation::Sharp;
  } else if (summation == "gauss") {
    opt.summation = riesz::Summation::Gauss;
  } else {
    throw riesz::ConfigError("--summation must be sharp or gauss");
  }
  opt.gauss_sigma_fraction = sigma_fraction;
  const riesz::KernelSpec spec = k.spec();
  const riesz::KernelTable t = riesz::build_table(spec, k.radius);
  const riesz::MultiplierGrid g = riesz::multiplier_eval(t, opt);
  const riesz::SupResult s = riesz::sup_norm(t, g, refine);
  Json cfg = base_config("multiplier", c);
  cfg["kernel"] = k.config();
  cfg["resolution"] = resolution;
  cfg["summation"] = summation;
  cfg["gauss_sigma_fraction"] = sigma_fraction;
  cfg["refine"] = refine;
  if (grid_csv) {
    auto os = open_csv(c, "multiplier.csv");
    riesz::io::write_multiplier_csv(os, g, cfg);
  }
  const riesz::cplx o = g.at_origin();
  write_json(c, "multiplier.json",
             Json{{"config", cfg},
                  {"spec", riesz::io::to_json(spec)},
                  {"sup", riesz::io::to_json(s)},
                  {"at_origin", {o.real(), o.imag()}},
                  {"partial_sum_of_conditionally_convergent_series", g.tail_flag}});
  return 0;
}

int cmd_norm(const Common& c, const KernelArgs& k, std::vector<double> ps, int box,
             const std::vector<int>& ladder, int iters, std::uint64_t seed, bool witness) {
  const riesz::KernelSpec spec = k.spec();
  const riesz::KernelTable t = riesz::build_table(spec, k.radius);
  Json cfg = base_config("norm", c);
  cfg["kernel"] = k.config();
  cfg["p"] = ps;
  cfg["box"] = box;
  cfg["ladder"] = ladder;
  cfg["iters"] = iters;
  cfg["seed"] = seed;
  Json estimates = Json::array();
  for (double p : ps) {
    riesz::NormOptions opt;
    opt.p = p;
    opt.half_width = box;
    opt.iters = iters;
    opt.seed = seed;
    std::vector<riesz::NormEstimate> runs;
    if (ladder.empty()) {
      runs.push_back(riesz::lp_lower_bound(t, opt));
    } else {
      std::vector<int> boxes = ladder;
      boxes.push_back(box);
      runs = riesz::lp_lower_bound_ladder(t, boxes, opt);
    }
    Json e = riesz::io::to_json(runs.back());
    if (runs.size() > 1) {
      Json steps = Json::array();
      for (const auto& r : runs) steps.push_back(riesz::io::to_json(r));
      e["ladder"] = steps;
    }
    const auto [lo, hi] = riesz::choi_bounds(p);
    Json ref{{"burkholder_p_star_minus_1", riesz::burkholder_constant(p)},
             {"choi_lower", lo},
             {"choi_upper", hi}};
    if (p >= riesz::kChoiAsymptoticPMin) ref["choi_asymptotic"] = riesz::choi_gamma_asymptotic(p);
    if (p >= 2.0 && spec.dim == 2) ref["conformal_bound"] = riesz::conformal_bound(p);
    e["reference"] = ref;
    if (witness) {
      std::ostringstream name;
      name << "witness_p" << riesz::io::fmt(p) << ".rzlf";
      const fs::path w = output_path(c, name.str());
      riesz::io::write_lattice_binary(w, runs.back().witness);
      e["witness_file"] = w.filename().string();
    }
    estimates.push_back(e);
  }
  write_json(c, "norm.json", Json{{"config", cfg}, {"spec", riesz::io::to_json(spec)},
                                  {"lower_bound_estimates", estimates}});
  return 0;
}

int cmd_mc(const Common& c, const std::vector<int>& m, std::uint64_t n, std::uint64_t seed,
           int streams, bool dump) {
  riesz::MCOptions opt;
  opt.streams = streams;
  std::vector<double> samples;
  if (dump) opt.samples = &samples;
  const riesz::MCReport r = riesz::u_monte_carlo(m, n, seed, opt);
  Json cfg = base_config("mc", c);
  cfg["m"] = m;
  cfg["n"] = n;
  cfg["seed"] = seed;
  cfg["streams"] = streams;
  cfg["dump_samples"] = dump;
  if (dump) {
    auto os = open_csv(c, "mc_samples.csv");
    riesz::io::write_config_header(os, cfg);
    os << "sample\n";
    for (double v : samples) os << riesz::io::fmt(v) << '\n';
  }
  write_json(c, "mc.json", Json{{"config", cfg}, {"report", riesz::io::to_json(r)}});
  return 0;
}

int cmd_j_l1(const Common& c, const std::vector<int>& jk, int d, int radius, double eps) {
  riesz::UOptions opt;
  opt.eps = eps;
  const riesz::L1Report r = riesz::j_l1_norm(jk[0], jk[1], d, radius, opt);
  Json cfg = base_config("j-l1", c);
  cfg["jk"] = jk;
  cfg["d"] = d;
  cfg["R"] = radius;
  cfg["eps"] = eps;
  write_json(c, "j_l1.json", Json{{"config", cfg},
                                  {"partial_sum", r.partial},
                                  {"tail_bound", r.tail_bound},
                                  {"envelope", r.envelope},
                                  {"tail_is_heuristic", r.tail_is_heuristic}});
  return 0;
}

// Fast internal consistency checks across modules.
int cmd_selftest(const Common& c) {
  struct Check {
    std::string name;
    bool ok;
    double value;
  };
  std::vector<Check> checks;
  {
    double worst = 0.0;
    for (int i = 0; i < 10; ++i)
      for (double t : {0.05, 0.1, 0.2, 0.5, 1.0}) {
        const double x = -0.5 + 0.1 * i;
        worst = std::max(worst, std::abs(riesz::theta_fourier(x, t).value -
                                         riesz::theta_gaussian(x, t).value));
      }
    checks.push_back({"theta_dual_representations", worst <= 1e-10, worst});
  }
  {
    const std::vector<int> m{1, 1};
    const double a = riesz::u_value(m), b = riesz::u_value_direct(m);
    checks.push_back({"u_quadrature_vs_direct", std::abs(a - b) <= 1e-8, std::abs(a - b)});
    const riesz::MCReport r = riesz::u_monte_carlo(m, 200000, 1);
    const double z = std::abs(r.mean - a) / r.standard_error;
    checks.push_back({"u_quadrature_vs_monte_carlo_sigma", z <= 4.0, z});
  }
  {
    const auto t = riesz::build_table(
        riesz::KernelSpec::single(riesz::Family::Probabilistic, 2, 1, 2), 8);
    const auto f = riesz::LatticeFunction::delta(2, 3);
    const auto a = riesz::apply_kernel(t, f, riesz::ApplyMethod::Direct);
    const auto b = riesz::apply_kernel(t, f, riesz::ApplyMethod::Fft);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
    checks.push_back({"direct_vs_fft_convolution", worst <= 1e-12, worst});
  }
  Json list = Json::array();
  bool all = true;
  for (const auto& ch : checks) {
    std::cout << (ch.ok ? "PASS " : "FAIL ") << ch.name << " (" << riesz::io::fmt(ch.value) << ")\n";
    list.push_back(Json{{"name", ch.name}, {"ok", ch.ok}, {"value", ch.value}});
    all = all && ch.ok;
  }
  write_json(c, "selftest.json", Json{{"config", base_config("selftest", c)}, {"checks", list}, {"all_passed", all}});
  return all ? 0 : kExitNumerical;
}

void load_cache() {
  const fs::path dir = riesz::cache_directory();
  if (!dir.empty()) riesz::UCache::instance().load(dir / riesz::kUCacheFileName);
}

void save_cache() {
  const fs::path dir = riesz::cache_directory();
  if (dir.empty()) return;
  try {
    riesz::UCache::instance().save(dir / riesz::kUCacheFileName);
  } catch (const std::exception& e) {
    std::cerr << "warning: U cache not saved: " << e.what() << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice Riesz-transform kernels, multipliers and norm estimates.\n"
               "U values are cached in $RIESZ_CACHE_DIR when that variable is set."};
  app.set_config("--config", "", "TOML/INI file with option defaults (flags take precedence)");
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand
  Common common;
  app.add_option("--out", common.out, "Output directory")->capture_default_str();
  app.add_option("--threads", common.threads, "Worker threads (0 = hardware concurrency)")
      ->capture_default_str();


  // kernel-table
  KernelArgs kt;
  std::string kt_csv = "kernel_table.csv";
  auto* c_kt = app.add_subcommand("kernel-table", "Write a kernel table and a check summary");
  kt.add(c_kt, 3);
  c_kt->add_option("--csv", kt_csv, "Table file name")->capture_default_str();

  // u
  std::vector<int> u_m;
  double u_eps = 1e-12;
  bool u_lag = false;
  std::string u_mc;
  auto* c_u = app.add_subcommand("u", "U(m) from the parity-class quadrature");
  c_u->add_option("--m", u_m, "Lattice point")->required();
  c_u->add_option("--eps", u_eps, "Absolute tolerance")->capture_default_str();
  c_u->add_flag("--laguerre", u_lag, "Also report the Gauss-Laguerre cross-check");
  c_u->add_option("--mc-report", u_mc, "mc.json from a run on the same m; adds a 3-sigma comparison");

  // u-direct
  std::vector<double> ud_x;
  double ud_eps = 1e-12;
  auto* c_ud = app.add_subcommand("u-direct", "U(x) from the heat-kernel integral; x may be off-lattice");
  c_ud->add_option("--x", ud_x, "Point in R^d")->required();
  c_ud->add_option("--eps", ud_eps, "Absolute tolerance")->capture_default_str();

  // qplot
  double q_tmin = 0.125, q_tmax = 0.5, q_eps = 1e-10;
  int q_points = 200;
  auto* c_q = app.add_subcommand("qplot", "q_0(t) and q_1(t) on a uniform t grid");
  c_q->add_option("--t-min", q_tmin, "Grid start")->capture_default_str();
  c_q->add_option("--t-max", q_tmax, "Grid end")->capture_default_str();
  c_q->add_option("--points", q_points, "Number of grid points")->capture_default_str();
  c_q->add_option("--eps", q_eps, "Quadrature tolerance")->capture_default_str();

  // multiplier
  KernelArgs mk;
  int m_res = 512, m_refine = 3;
  std::string m_sum = "sharp";
  double m_sigma = 0.2;
  bool m_csv = false;
  auto* c_m = app.add_subcommand("multiplier", "Torus multiplier on a grid and its refined sup");
  mk.add(c_m, 200);
  c_m->add_option("--resolution", m_res, "Grid points per axis (even, >= 8)")->capture_default_str();
  c_m->add_option("--summation", m_sum, "sharp or gauss")->capture_default_str();
  c_m->add_option("--gauss-sigma-fraction", m_sigma, "Gauss width / R")->capture_default_str();
  c_m->add_option("--refine", m_refine, "Golden-section refinement sweeps")->capture_default_str();
  c_m->add_flag("--grid-csv", m_csv, "Also write the grid values");

  // norm
  KernelArgs nk;
  std::vector<double> n_p{2.0};
  int n_box = 24, n_iters = 500;
  std::vector<int> n_ladder;
  std::uint64_t n_seed = 1;
  bool n_witness = false;
  auto* c_n = app.add_subcommand("norm", "Lower bounds on l^p operator norms of box compressions");
  nk.add(c_n, 100);
  c_n->add_option("--p", n_p, "Exponents")->capture_default_str();
  c_n->add_option("--box", n_box, "Box half-width")->capture_default_str();
  c_n->add_option("--ladder", n_ladder, "Smaller half-widths to warm-start from");
  c_n->add_option("--iters", n_iters, "Ascent iterations per start")->capture_default_str();
  c_n->add_option("--seed", n_seed, "Random start seed")->capture_default_str();
  c_n->add_flag("--witness", n_witness, "Write each witness as a binary lattice file");

  // mc
  std::vector<int> mc_m;
  std::uint64_t mc_n = 1000000, mc_seed = 1;
  int mc_streams = 64;
  bool mc_dump = false;
  auto* c_mc = app.add_subcommand("mc", "Monte-Carlo estimate of U(m)");
  c_mc->add_option("--m", mc_m, "Lattice point")->required();
  c_mc->add_option("--n", mc_n, "Samples (>= 1000)")->capture_default_str();
  c_mc->add_option("--seed", mc_seed, "Seed")->capture_default_str();
  c_mc->add_option("--streams", mc_streams, "Independent substreams")->capture_default_str();
  c_mc->add_flag("--dump-samples", mc_dump, "Write every sample to mc_samples.csv");

  // j-l1
  std::vector<int> jl_jk{1, 2};
  int jl_d = 2, jl_r = 40;
  double jl_eps = 1e-12;
  auto* c_jl = app.add_subcommand("j-l1", "l1 norm of the corrector kernel with a heuristic tail");
  c_jl->add_option("--jk", jl_jk, "Kernel indices")->expected(2)->capture_default_str();
  c_jl->add_option("--d", jl_d, "Dimension")->capture_default_str();
  c_jl->add_option("--R", jl_r, "Radius")->capture_default_str();
  c_jl->add_option("--eps", jl_eps, "U tolerance")->capture_default_str();

  auto* c_st = app.add_subcommand("selftest", "Quick cross-module consistency checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends report exit code 0.
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  riesz::set_thread_count(common.threads);
  int rc = 0;
  try {
    load_cache();
    if (c_kt->parsed()) {
      rc = cmd_kernel_table(common, kt, kt_csv);
    } else if (c_u->parsed()) {
      rc = cmd_u(common, u_m, u_eps, u_lag, u_mc);
    } else if (c_ud->parsed()) {
      rc = cmd_u_direct(common, ud_x, ud_eps);
    } else if (c_q->parsed()) {
      rc = cmd_qplot(common, q_tmin, q_tmax, q_points, q_eps);
    } else if (c_m->parsed()) {
      rc = cmd_multiplier(common, mk, m_res, m_sum, m_sigma, m_refine, m_csv);
    } else if (c_n->parsed()) {
      rc = cmd_norm(common, nk, n_p, n_box, n_ladder, n_iters, n_seed, n_witness);
    } else if (c_mc->parsed()) {
      rc = cmd_mc(common, mc_m, mc_n, mc_seed, mc_streams, mc_dump);
    } else if (c_jl->parsed()) {
      rc = cmd_j_l1(common, jl_jk, jl_d, jl_r, jl_eps);
    } else if (c_st->parsed()) {
      rc = cmd_selftest(common);
    }
  } catch (const riesz::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const riesz::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    save_cache();
    return kExitNumerical;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  save_cache();
  return rc;
}
