#pragma once

// Thin wrappers around FFTW. Plans are cached per size and executed with the
// new-array interface, which is safe to call concurrently.

#include <complex>
#include <span>
#include <vector>

namespace travwave::fft {

/// Unnormalized DCT-II: y_k = 2 sum_j x_j cos(pi (j + 1/2) k / n).
std::vector<double> dct2(std::span<const double> x);

/// Unnormalized DCT-III: y_j = x_0 + 2 sum_{k>=1} x_k cos(pi (j + 1/2) k / n).
std::vector<double> dct3(std::span<const double> x);

/// Real-to-complex forward transform, n/2 + 1 outputs, no normalization.
std::vector<std::complex<double>> rfft(std::span<const double> x);

/// Inverse of rfft for a length-n signal, normalized so irfft(rfft(x)) == x.
std::vector<double> irfft(std::span<const std::complex<double>> spectrum, std::size_t n);

/// Owned aligned buffers with their own r2c/c2r plans, for hot loops that
/// transform the same size over and over. Not shareable between threads.
class RealTransform {
public:
  explicit RealTransform(std::size_t n);
  ~RealTransform();
  RealTransform(const RealTransform&) = delete;
  RealTransform& operator=(const RealTransform&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::span<double> values() noexcept { return {real_, n_}; }
  std::span<std::complex<double>> spectrum() noexcept { return {spec_, n_ / 2 + 1}; }
  /// values -> spectrum, unnormalized.
  void forward();
  /// spectrum -> values, unnormalized (a round trip multiplies by n); clobbers spectrum.
  void inverse();

private:
  std::size_t n_;
  double* real_;
  std::complex<double>* spec_;
  void* forward_plan_;
  void* inverse_plan_;
};

} // namespace travwave::fft
