#include "liouville/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <numbers>
#include <utility>

#include "liouville/error.hpp"

namespace liouville {

namespace {

// FFTW's planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

Fft1d::Fft1d(std::size_t n) : n_(n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "FFT length must be positive");
  std::lock_guard lock(planner_mutex());
  auto* buf = fftw_alloc_complex(n);
  buffer_ = buf;
  const int len = static_cast<int>(n);
  forward_plan_ = fftw_plan_dft_1d(len, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_plan_ = fftw_plan_dft_1d(len, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
}

Fft1d::~Fft1d() { release(); }

Fft1d::Fft1d(Fft1d&& other) noexcept
    : n_(std::exchange(other.n_, 0)),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_plan_(std::exchange(other.forward_plan_, nullptr)),
      backward_plan_(std::exchange(other.backward_plan_, nullptr)) {}

Fft1d& Fft1d::operator=(Fft1d&& other) noexcept {
  if (this != &other) {
    release();
    n_ = std::exchange(other.n_, 0);
    buffer_ = std::exchange(other.buffer_, nullptr);
    forward_plan_ = std::exchange(other.forward_plan_, nullptr);
    backward_plan_ = std::exchange(other.backward_plan_, nullptr);
  }
  return *this;
}

void Fft1d::release() noexcept {
  if (!buffer_) return;
  std::lock_guard lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_plan_));
  fftw_free(buffer_);
  buffer_ = forward_plan_ = backward_plan_ = nullptr;
}

void Fft1d::execute(void* plan, std::span<std::complex<double>> data) const {
  if (data.size() != n_) throw Error(ErrorKind::InvalidArgument, "FFT length mismatch");
  auto* buf = static_cast<std::complex<double>*>(buffer_);
  std::copy(data.begin(), data.end(), buf);
  fftw_execute(static_cast<fftw_plan>(plan));
  std::copy(buf, buf + n_, data.begin());
}

void Fft1d::forward(std::span<std::complex<double>> data) const { execute(forward_plan_, data); }

void Fft1d::backward(std::span<std::complex<double>> data) const { execute(backward_plan_, data); }

std::vector<double> fft_wavenumbers(std::size_t n, double dx) {
  std::vector<double> k(n);
  const double scale = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  for (std::size_t m = 0; m < n; ++m) {
    auto idx = static_cast<std::ptrdiff_t>(m);
    if (idx >= half) idx -= static_cast<std::ptrdiff_t>(n);
    k[m] = scale * static_cast<double>(idx);
  }
  return k;
}

bool is_power_of_two(std::size_t n) noexcept { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace liouville
