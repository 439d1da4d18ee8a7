#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace riesz {

/// Smallest n' >= n whose prime factors are all in {2, 3, 5, 7}.
std::size_t fast_fft_length(std::size_t n);

/// Owns an FFTW buffer and a pair of unnormalized forward/backward plans for
/// a d-dimensional complex transform (row-major, first axis slowest).
/// Planning is serialized internally; executing distinct instances from
/// different threads is safe.
class FftPlan {
 public:
  explicit FftPlan(std::vector<int> dims);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  std::complex<double>* data() { return data_; }
  std::size_t size() const { return size_; }
  const std::vector<int>& dims() const { return dims_; }

  /// In place, sign -1: X[k] = sum_n x[n] exp(-2 pi i k.n / N).
  void forward();
  /// In place, sign +1, no 1/N scaling.
  void backward();

 private:
  std::vector<int> dims_;
  std::size_t size_ = 0;
  std::complex<double>* data_ = nullptr;
  void* fwd_ = nullptr;
  void* bwd_ = nullptr;
};

}  // namespace riesz
