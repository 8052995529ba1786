#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace liouville {

/// In-place 1D complex FFT of fixed length backed by FFTW.
/// forward: X_k = sum_j x_j e^{-2 pi i jk/n}; backward is unnormalized.
class Fft1d {
 public:
  explicit Fft1d(std::size_t n);
  ~Fft1d();
  Fft1d(const Fft1d&) = delete;
  Fft1d& operator=(const Fft1d&) = delete;
  Fft1d(Fft1d&& other) noexcept;
  Fft1d& operator=(Fft1d&& other) noexcept;

  std::size_t size() const noexcept { return n_; }

  void forward(std::span<std::complex<double>> data) const;
  void backward(std::span<std::complex<double>> data) const;

 private:
  void execute(void* plan, std::span<std::complex<double>> data) const;
  void release() noexcept;

  std::size_t n_ = 0;
  void* buffer_ = nullptr;
  void* forward_plan_ = nullptr;
  void* backward_plan_ = nullptr;
};

/// Angular wavenumbers 2 pi m / (n dx) in FFT order (m = 0..n/2-1, -n/2..-1).
std::vector<double> fft_wavenumbers(std::size_t n, double dx);

bool is_power_of_two(std::size_t n) noexcept;

}  // namespace liouville
