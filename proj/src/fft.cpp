#include "riesz/fft.hpp"

#include <fftw3.h>

#include <mutex>

#include "riesz/errors.hpp"

namespace riesz {
namespace {
std::mutex& planner_mutex() {
  static std::mutex mu;
  return mu;
}
}  // namespace

std::size_t fast_fft_length(std::size_t n) {
  if (n <= 1) return 1;
  for (std::size_t c = n;; ++c) {
    std::size_t r = c;
    for (std::size_t p : {2, 3, 5, 7})
      while (r % p == 0) r /= p;
    if (r == 1) return c;
  }
}

FftPlan::FftPlan(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ConfigError("FFT needs at least one axis");
  size_ = 1;
  for (int n : dims_) {
    if (n < 1) throw ConfigError("FFT axis length must be positive");
    size_ *= static_cast<std::size_t>(n);
  }
  std::lock_guard lock(planner_mutex());
  data_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * size_));
  if (data_ == nullptr) throw NumericalError("fftw_malloc failed");
  auto* buf = reinterpret_cast<fftw_complex*>(data_);
  const int rank = static_cast<int>(dims_.size());
  fwd_ = fftw_plan_dft(rank, dims_.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  bwd_ = fftw_plan_dft(rank, dims_.data(), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (fwd_ == nullptr || bwd_ == nullptr) {
    if (fwd_) fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
    if (bwd_) fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
    fftw_free(data_);
    throw NumericalError("FFTW planning failed");
  }
}

FftPlan::~FftPlan() {
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  fftw_free(data_);
}

void FftPlan::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }
void FftPlan::backward() { fftw_execute(static_cast<fftw_plan>(bwd_)); }

}  // namespace riesz
