#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>

namespace riesz {

/// U is constant on classes of lattice points with equal |m|^2 and equal
/// number of even coordinates.
struct UKey {
  std::int64_t r2 = 0;
  int e = 0;
  auto operator<=>(const UKey&) const = default;
};

int even_count(std::span<const int> m);
UKey u_key(std::span<const int> m);

struct UOptions {
  double eps = 1e-12;   // absolute tolerance on U
  double s_max = 200.0; // the s-integrand is below 1e-30 beyond this
};

/// U(m) + 1 from the one-dimensional parity representation
///   U + 1 = Gamma((d+2)/2)^{-1} int_0^inf s^{d/2} e^{-s} (1 - q0^e q1^{d-e}) ds,
/// with q_j evaluated at |m|^2 / (4 s). Not memoized.
double u_plus_one_quadrature(int d, UKey key, const UOptions& opt = {});

/// Same integral by an n-node generalized Gauss-Laguerre rule after the
/// substitution s = 2u (the integrand grows like e^{s/2} for the smallest
/// classes, so the plain weight s^{d/2} e^{-s} would leave it unbounded).
double u_plus_one_laguerre(int d, UKey key, std::size_t nodes = 64);

/// U(m) + 1 from the (d+1)-dimensional heat-kernel integral, with the inner
/// Gaussian integral factorized per coordinate. Accepts any nonzero real x;
/// at lattice points it is an oracle independent of the parity reduction.
double u_plus_one_direct(std::span<const double> x, const UOptions& opt = {});

/// Memoized U + 1 for a class key; thread safe. U + 1 decays faster than
/// any power of |m|, so callers that need its size use this form: U itself
/// rounds to -1 in double precision beyond |m| of about 8.
double u_plus_one(int d, UKey key, const UOptions& opt = {});
double u_value(int d, UKey key, const UOptions& opt = {});
double u_value(std::span<const int> m, const UOptions& opt = {});
double u_value_direct(std::span<const int> m, const UOptions& opt = {});
double u_value_direct_real(std::span<const double> x, const UOptions& opt = {});

/// Process-wide memo of U + 1 keyed by (d, r2, e) at one tolerance.
/// Concurrent inserts of the same key are benign: values are deterministic.
class UCache {
 public:
  static UCache& instance();

  bool lookup(int d, UKey key, double eps, double& u_plus_one) const;
  void insert(int d, UKey key, double eps, double u_plus_one);
  void clear();
  std::size_t size() const;

  /// Loads entries from a line-delimited text file ("d r2 e eps value");
  /// missing files are ignored. Returns the number of entries read.
  std::size_t load(const std::filesystem::path& file);
  /// Appends entries not yet present in the file.
  std::size_t save(const std::filesystem::path& file) const;

 private:
  UCache() = default;
  struct Impl;
  Impl& impl() const;
};

/// Directory named by RIESZ_CACHE_DIR, or empty when unset.
std::filesystem::path cache_directory();
inline constexpr const char* kUCacheFileName = "u_cache_v1.txt";

}  // namespace riesz
